#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakwave/coefficient.hpp"
#include "weakwave/segment.hpp"
#include "weakwave/tolerance.hpp"

namespace weakwave {

enum class Equation { Nvw, Ch };
enum class GlueKind { Cusp, InflectionSingular, ConstantJunction, Peak, SmoothC1 };

const char* to_string(Equation e);
const char* to_string(GlueKind k);

struct GlueVerdict {
  bool admissible = true;
  GlueKind kind = GlueKind::SmoothC1;
  std::string reason;  // empty when admissible
};

struct GluePoint {
  double xi_star = 0.0;
  double w_star = 0.0;
  GlueKind kind = GlueKind::SmoothC1;
  Slope left_slope, right_slope;
  Constants left_constants, right_constants;
  std::size_t left_segment = 0;
  GlueVerdict verdict;
};

struct Profile {
  Equation equation = Equation::Nvw;
  double s = 0.0;
  std::optional<CoefficientSpec> coefficient;
  std::vector<Segment> segments;
  std::vector<GluePoint> breakpoints;
  nlohmann::json plan;
  Tolerances tol;

  double xi_lo() const { return segments.front().xi_lo(); }
  double xi_hi() const { return segments.back().xi_hi(); }
  bool admissible() const;
};

struct PointEval {
  double w = 0.0;
  Slope left_slope, right_slope;
};

// Throws OutOfDomain outside [xi_lo, xi_hi].
PointEval profile_eval(const Profile& p, double xi);

struct SampleRow {
  double xi = 0.0;
  double w = 0.0;
  Slope left_slope, right_slope;
  std::string flag;  // ok | singular | tail
};

std::vector<SampleRow> profile_sample(const Profile& p, const std::vector<double>& xi_grid);

// Max over an n-point interior w-grid of the w-parametrized first-integral
// residual divided by (1 + |k|) or (1 + |b|). Zero for non-monotone segments.
double nvw_invariant_residual(const Segment& seg, const CoefficientSpec& spec, double s, int n = 1000);
double ch_invariant_residual(const Segment& seg, double s, int n = 1000);

// Builds the glue point between two ξ-adjacent segments.
GluePoint make_glue_point(const std::vector<Segment>& segs, std::size_t left);

}  // namespace weakwave
