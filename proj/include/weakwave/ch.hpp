#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakwave/cubic.hpp"
#include "weakwave/profile.hpp"

namespace weakwave::ch {

enum class Kind {
  NoBoundedWave,
  CusponWithDecay,
  PeakonWithDecay,
  PeriodicCuspon,
  PeriodicPeakon,
  StumponCompatible,
  MirrorCase,
  UnclassifiedBoundedDerivative,
};
const char* to_string(Kind k);

struct Certificate {
  double residual = 0.0;
  bool ok = true;
};

struct Taxonomy {
  CubicAnalysis analysis;
  Kind kind = Kind::NoBoundedWave;
  // Classification ignoring the stumpon flag; for MirrorCase the mirrored kind.
  Kind inner_kind = Kind::NoBoundedWave;
  bool stumpon_compatible = false;
  bool reflected = false;  // s < 0, classified through (-s, a, -b)
  double w_min = 0.0, eta = 0.0;  // decay kinds, in the original coordinates
  std::vector<double> etas;       // periodic kinds, ascending, original coordinates
  std::map<std::string, Certificate> certificates;
};

Taxonomy classify_ch(double s, double a, double b);

bool constructible(Kind k);

struct Piece {
  enum class Type { Const, Mono, ExpPeak } type = Type::Const;
  std::optional<double> a;  // overrides the plan's a
  // const
  double w = 0.0;
  std::optional<double> length;
  std::optional<double> b_const;
  // mono
  double b = 0.0;
  Orientation dir = Orientation::Increasing;
  double from = 0.0, to = 0.0;
  // exp
  double c1 = 0.0, c2 = 0.0;
  int e = 1;
  double x_lo = 0.0, x_hi = 0.0;
};

struct Plan {
  double a = 0.0;
  std::vector<Piece> pieces;
  double xi0 = 0.0;
};

Plan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const Plan& p);

struct Window {
  double lo = -10.0;
  double hi = 10.0;
};

struct BuildOptions {
  Window window;
  double plateau_length = 2.0;  // stumpon plateau
};

// Plan used by build_ch_profile for the classified kind of (s, a, b).
Plan plan_for(double s, double a, double b, const Taxonomy& tax, const BuildOptions& opt,
              const Tolerances& tol = {});

Profile build_ch_profile(double s, double a, double b, std::optional<Kind> kind = std::nullopt,
                         const BuildOptions& opt = {}, const Tolerances& tol = {});

// Monotone CH piece between w_from and w_to.
Segment mono_segment(double s, double a, double b, double w_from, double w_to, Orientation dir,
                     const Tolerances& tol = {});

struct ExpPeakPair {
  Segment left, right;
  double c1 = 0.0, c2 = 0.0;
};
ExpPeakPair build_exp_peak(double s, double a, double gamma0, double x_lo, double x_hi);

struct GlueSide {
  bool constant = false;
  double a = 0.0, b = 0.0;
  double w = 0.0;
  Slope slope;
};

GlueSide side_of(const Segment& seg, bool junction_at_right_end);

GlueVerdict check_glue_ch(const GlueSide& left, const GlueSide& right, double s,
                          const Tolerances& tol = {});

Profile assemble_ch(double s, const Plan& plan, const Tolerances& tol = {}, bool checked = true);

}  // namespace weakwave::ch
