#pragma once

#include <utility>
#include <vector>

#include "weakwave/interp.hpp"

namespace weakwave {

enum class Family { SqrtSin, ArctanLinear, LcDirector, TabulatedSpline };

const char* to_string(Family f);

struct CoefValue {
  double c, cp, cpp;
};

// Wave-speed function c(u) with certified bounds alpha <= c <= beta.
class CoefficientSpec {
 public:
  static CoefficientSpec sqrt_sin(double q);
  static CoefficientSpec arctan_linear(double alpha, double beta);
  static CoefficientSpec lc_director(double lambda1, double lambda2);
  static CoefficientSpec tabulated(std::vector<std::pair<double, double>> nodes);

  Family family() const { return family_; }
  CoefValue eval(double u) const;
  // c²(u) - c²(u0) without cancellation where the family allows it.
  double c2_diff(double u, double u0) const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double k1_bound() const { return k1_; }
  double k2_bound() const { return k2_; }

  // Family parameters: q | alpha, beta | lambda1, lambda2 | (empty for splines).
  const std::vector<double>& params() const { return params_; }
  const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }

 private:
  CoefficientSpec() = default;
  void certify_by_scan(double lo, double hi);

  Family family_ = Family::SqrtSin;
  std::vector<double> params_;
  std::vector<std::pair<double, double>> nodes_;
  CubicSpline spline_;
  double alpha_ = 0, beta_ = 0, k1_ = 0, k2_ = 0;
};

inline CoefValue eval_coefficient(const CoefficientSpec& spec, double u) { return spec.eval(u); }

}  // namespace weakwave
