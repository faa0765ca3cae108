#include "weakwave/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakwave/error.hpp"
#include "weakwave/roots.hpp"

namespace weakwave {

const char* to_string(Family f) {
  switch (f) {
    case Family::SqrtSin: return "SqrtSin";
    case Family::ArctanLinear: return "ArctanLinear";
    case Family::LcDirector: return "LcDirector";
    case Family::TabulatedSpline: return "TabulatedSpline";
  }
  return "Unknown";
}

namespace {
constexpr int kScanPoints = 10000;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be finite");
}
}  // namespace

CoefficientSpec CoefficientSpec::sqrt_sin(double q) {
  require_finite(q, "q");
  if (!(q > 1.0)) throw Error(ErrorCode::InvalidInput, "SqrtSin requires q > 1");
  CoefficientSpec c;
  c.family_ = Family::SqrtSin;
  c.params_ = {q};
  c.certify_by_scan(0.0, 2.0 * std::numbers::pi);
  c.alpha_ = std::sqrt(q - 1.0);
  c.beta_ = std::sqrt(q + 1.0);
  return c;
}

CoefficientSpec CoefficientSpec::arctan_linear(double alpha, double beta) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  if (!(alpha > 0.0 && beta > alpha))
    throw Error(ErrorCode::InvalidInput, "ArctanLinear requires 0 < alpha < beta");
  CoefficientSpec c;
  c.family_ = Family::ArctanLinear;
  c.params_ = {alpha, beta};
  c.alpha_ = alpha;
  c.beta_ = beta;
  const double A = (beta - alpha) / std::numbers::pi;
  c.k1_ = A;
  c.k2_ = A * 3.0 * std::sqrt(3.0) / 8.0;
  return c;
}

CoefficientSpec CoefficientSpec::lc_director(double lambda1, double lambda2) {
  require_finite(lambda1, "lambda1");
  require_finite(lambda2, "lambda2");
  if (!(lambda1 > 0.0 && lambda2 > 0.0))
    throw Error(ErrorCode::InvalidInput, "LcDirector requires positive lambda1, lambda2");
  CoefficientSpec c;
  c.family_ = Family::LcDirector;
  c.params_ = {lambda1, lambda2};
  c.certify_by_scan(0.0, std::numbers::pi);
  c.alpha_ = std::sqrt(std::min(lambda1, lambda2));
  c.beta_ = std::sqrt(std::max(lambda1, lambda2));
  return c;
}

CoefficientSpec CoefficientSpec::tabulated(std::vector<std::pair<double, double>> nodes) {
  if (nodes.size() < 2) throw Error(ErrorCode::InvalidInput, "TabulatedSpline needs >= 2 nodes");
  std::vector<double> x, y;
  for (const auto& [u, v] : nodes) {
    require_finite(u, "node u");
    require_finite(v, "node c");
    x.push_back(u);
    y.push_back(v);
  }
  CoefficientSpec c;
  c.family_ = Family::TabulatedSpline;
  c.nodes_ = std::move(nodes);
  c.spline_ = CubicSpline(x, y);
  c.certify_by_scan(x.front(), x.back());
  double m2 = 0.0;
  for (double m : c.spline_.second_derivatives()) m2 = std::max(m2, std::abs(m));
  c.k2_ = m2;
  if (!(c.alpha_ > 0.0)) throw Error(ErrorCode::InvalidInput, "TabulatedSpline must stay positive");
  return c;
}

// Dense scan for the extrema of c and |c'|, |c''|, refined by golden-section
// search around the best grid points.
void CoefficientSpec::certify_by_scan(double lo, double hi) {
  const double h = (hi - lo) / kScanPoints;
  double cmin = 1e300, cmax = -1e300, d1 = 0.0, d2 = 0.0;
  int imin = 0, imax = 0, id1 = 0, id2 = 0;
  for (int i = 0; i <= kScanPoints; ++i) {
    const CoefValue v = eval(lo + h * i);
    if (v.c < cmin) cmin = v.c, imin = i;
    if (v.c > cmax) cmax = v.c, imax = i;
    if (std::abs(v.cp) > d1) d1 = std::abs(v.cp), id1 = i;
    if (std::abs(v.cpp) > d2) d2 = std::abs(v.cpp), id2 = i;
  }
  auto refine = [&](int i, auto value) {
    const double a = std::max(lo, lo + h * (i - 1)), b = std::min(hi, lo + h * (i + 1));
    const double x = roots::golden_min(value, a, b, 1e-14 * (1.0 + std::abs(a)));
    return value(x);
  };
  cmin = std::min(cmin, refine(imin, [&](double u) { return eval(u).c; }));
  cmax = std::max(cmax, -refine(imax, [&](double u) { return -eval(u).c; }));
  d1 = std::max(d1, -refine(id1, [&](double u) { return -std::abs(eval(u).cp); }));
  d2 = std::max(d2, -refine(id2, [&](double u) { return -std::abs(eval(u).cpp); }));
  alpha_ = cmin;
  beta_ = cmax;
  k1_ = d1;
  k2_ = d2;
}

CoefValue CoefficientSpec::eval(double u) const {
  switch (family_) {
    case Family::SqrtSin: {
      const double sn = std::sin(u), cs = std::cos(u);
      const double c = std::sqrt(sn + params_[0]);
      const double cp = cs / (2.0 * c);
      const double cpp = -sn / (2.0 * c) - cs * cs / (4.0 * c * c * c);
      return {c, cp, cpp};
    }
    case Family::ArctanLinear: {
      const double A = (params_[1] - params_[0]) / std::numbers::pi;
      const double B = params_[0] + params_[1];
      const double d = 1.0 + u * u;
      return {A * std::atan(u) + 0.5 * B, A / d, -2.0 * A * u / (d * d)};
    }
    case Family::LcDirector: {
      const double l1 = params_[0], l2 = params_[1];
      const double sn = std::sin(u), cs = std::cos(u);
      const double c = std::sqrt(l1 * sn * sn + l2 * cs * cs);
      const double cp = (l1 - l2) * std::sin(2.0 * u) / (2.0 * c);
      const double cpp = ((l1 - l2) * std::cos(2.0 * u) - cp * cp) / c;
      return {c, cp, cpp};
    }
    case Family::TabulatedSpline: {
      const auto v = spline_.eval(u);
      return {v.f, v.df, v.d2f};
    }
  }
  return {0, 0, 0};
}

double CoefficientSpec::c2_diff(double u, double u0) const {
  switch (family_) {
    case Family::SqrtSin:
      return 2.0 * std::cos(0.5 * (u + u0)) * std::sin(0.5 * (u - u0));
    case Family::ArctanLinear: {
      const double A = (params_[1] - params_[0]) / std::numbers::pi;
      const double dc = A * std::atan2(u - u0, 1.0 + u * u0);
      return dc * (eval(u).c + eval(u0).c);
    }
    case Family::LcDirector:
      return (params_[0] - params_[1]) * std::sin(u + u0) * std::sin(u - u0);
    case Family::TabulatedSpline: {
      const double c = eval(u).c, c0 = eval(u0).c;
      return (c - c0) * (c + c0);
    }
  }
  return 0.0;
}

}  // namespace weakwave
