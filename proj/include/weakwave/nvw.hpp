#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakwave/coefficient.hpp"
#include "weakwave/profile.hpp"

namespace weakwave::nvw {

enum class Regime { OutsideBand, InteriorBand, BoundaryBand };
const char* to_string(Regime r);

struct SpeedRegime {
  Regime regime = Regime::InteriorBand;
  double s = 0.0, alpha = 0.0, beta = 0.0;
};

SpeedRegime speed_regime(const CoefficientSpec& spec, double s, const Tolerances& tol = {});

struct GlueCandidate {
  double u_star = 0.0;
  double cprime = 0.0;
  bool degenerate = false;
};

std::vector<GlueCandidate> glue_candidates(const CoefficientSpec& spec, double s, double u_lo,
                                           double u_hi, int scan_points = 10000,
                                           const Tolerances& tol = {});

Segment segment_between(const CoefficientSpec& spec, double s, double k, double w_a, double w_b,
                        Orientation orientation, const Tolerances& tol = {});

// One side of a junction: a constant or a monotone piece seen from w_star.
struct GlueSide {
  bool constant = false;
  double k = 0.0;
  double w = 0.0;  // the side's limit value at the junction
  Slope slope;     // one-sided slope at the junction
};

GlueSide side_of(const Segment& seg, bool junction_at_right_end);

GlueVerdict check_glue_nvw(const GlueSide& left, const GlueSide& right, double w_star,
                           const CoefficientSpec& spec, double s, const Tolerances& tol = {});

struct Piece {
  bool constant = false;
  double w = 0.0;                    // const
  std::optional<double> length;      // const
  double k = 0.0;                    // mono
  Orientation dir = Orientation::Increasing;
  double from = 0.0, to = 0.0;       // mono
};

struct Plan {
  std::vector<Piece> pieces;
  double xi0 = 0.0;
};

Plan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const Plan& p);

// checked = true throws InadmissiblePlan at the first failing junction;
// otherwise verdicts are recorded on the glue points.
Profile assemble_nvw(const CoefficientSpec& spec, double s, const Plan& plan,
                     const Tolerances& tol = {}, bool checked = true);

// ∫ w_ξ² dξ over the part of a monotone segment with w in [w1, w2].
double wxi_l2(const Segment& seg, const CoefficientSpec& spec, double s, double w1, double w2,
              const Tolerances& tol = {});

std::vector<double> default_holder_grid();
double holder_exponent(const Profile& p, double xi_star,
                       const std::vector<double>& h_grid = default_holder_grid());

}  // namespace weakwave::nvw
