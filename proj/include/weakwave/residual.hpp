#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weakwave/bump.hpp"
#include "weakwave/profile.hpp"

namespace weakwave::verify {

struct ResidualResult {
  BumpTestFunction bump;
  double R = 0.0;
  double N = 0.0;
  double normalized = 0.0;  // |R| / N
  double quad_error = 0.0;  // estimated absolute error of R
  int cells = 0;            // quadrature panels used for R and N
};

// Weak-form residual of a NVW traveling-wave profile against one bump.
ResidualResult residual_nvw(const Profile& p, const CoefficientSpec& spec, double s,
                            const BumpTestFunction& b, const Tolerances& tol = {});
// Weak-form residual of a CH traveling-wave profile against one bump.
ResidualResult residual_ch(const Profile& p, double s, const BumpTestFunction& b,
                           const Tolerances& tol = {});
// Dispatches on the profile's equation.
ResidualResult residual(const Profile& p, const BumpTestFunction& b, const Tolerances& tol = {});

struct JumpEntry {
  std::size_t index = 0;
  double xi_star = 0.0, w_star = 0.0;
  GlueKind kind = GlueKind::SmoothC1;
  bool admissible = true;
  std::string reason;
  std::map<std::string, double> values;
};

JumpEntry jump_report(const Profile& p, std::size_t glue_index);

// Max relative residual of the classical traveling-wave ODE on interior points.
double classical_residual_nvw(const Segment& seg, const CoefficientSpec& spec, double s,
                              int n_points = 200);
double classical_residual_ch(const Segment& seg, double s, int n_points = 200);

enum class Placement { Grid, SeededRandom };

struct SuiteOptions {
  int n_bumps = 16;
  Placement placement = Placement::SeededRandom;
  std::uint64_t seed = 0;
  double d_x = 1.0;
  double t_lo = 0.5, t_hi = 4.5;
};

struct ResidualReport {
  std::vector<ResidualResult> entries;
  double max_normalized = 0.0;
  double median_normalized = 0.0;
  std::vector<JumpEntry> jumps;
  bool all_junctions_admissible = true;
  int total_cells = 0;
  double total_quad_error = 0.0;
};

std::vector<BumpTestFunction> place_bumps(const Profile& p, const SuiteOptions& opt);

ResidualReport residual_suite(const Profile& p, const SuiteOptions& opt = {},
                              const Tolerances& tol = {});

}  // namespace weakwave::verify
