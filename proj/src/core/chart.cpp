#include "weakwave/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakwave/error.hpp"
#include "weakwave/quadrature.hpp"

namespace weakwave {

namespace {

constexpr int kInitialIntervals = 8;
constexpr int kMaxIntervals = 200000;
constexpr double kRelAccuracy = 1e-12;
constexpr std::array<double, 4> kCheckPoints = {-0.85, -0.4, 0.4, 0.85};

std::array<double, 5> lobatto_nodes() {
  std::array<double, 5> x;
  for (int k = 0; k < 5; ++k) x[k] = std::cos(std::numbers::pi * k / 4.0);
  x[2] = 0.0;
  return x;
}

// Inverse of the Vandermonde matrix V[k][j] = x_k^j at the Lobatto nodes.
std::array<std::array<double, 5>, 5> vandermonde_inverse() {
  const auto x = lobatto_nodes();
  double a[5][10];
  for (int k = 0; k < 5; ++k) {
    double p = 1.0;
    for (int j = 0; j < 5; ++j) {
      a[k][j] = p;
      p *= x[k];
      a[k][5 + j] = (j == k) ? 1.0 : 0.0;
    }
  }
  for (int c = 0; c < 5; ++c) {
    int piv = c;
    for (int r = c + 1; r < 5; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    for (int j = 0; j < 10; ++j) std::swap(a[c][j], a[piv][j]);
    const double d = a[c][c];
    for (int j = 0; j < 10; ++j) a[c][j] /= d;
    for (int r = 0; r < 5; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (int j = 0; j < 10; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::array<std::array<double, 5>, 5> inv;
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) inv[j][k] = a[j][5 + k];
  return inv;
}

double horner(const std::array<double, 5>& a, double x) {
  return (((a[4] * x + a[3]) * x + a[2]) * x + a[1]) * x + a[0];
}

double horner_d(const std::array<double, 5>& a, double x) {
  return ((4 * a[4] * x + 3 * a[3]) * x + 2 * a[2]) * x + a[1];
}

}  // namespace

ChartTable::ChartTable(const ChartGeometry& g, const Reduced& reduced, double abs_tol) : g_(g) {
  if (!(g_.t_max > 0.0) || !std::isfinite(g_.t_max))
    throw Error(ErrorCode::InvalidInput, "chart has empty parameter range");
  static const auto xk = lobatto_nodes();
  static const auto vinv = vandermonde_inverse();

  auto sample = [&](double t) {
    double off;
    switch (g_.map) {
      case ChartMap::Linear: off = t; break;
      case ChartMap::Sqrt: off = t * t; break;
      default: off = g_.eps * std::exp(t); break;
    }
    const double v = g_.factor * reduced(w(t), off);
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::NumericalFailure, "arclength density is not positive and finite");
    return v;
  };

  const double budget = 0.05 * abs_tol / g_.t_max;
  const double min_width = 1e-9 * std::max(g_.t_max, 1.0);

  nodes_.clear();
  coef_.clear();
  nodes_.push_back(0.0);

  auto fit = [&](double a, double b, std::array<double, 5>& coef) {
    std::array<double, 5> vals;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int k = 0; k < 5; ++k) vals[k] = sample(c + h * xk[k]);
    for (int j = 0; j < 5; ++j) {
      coef[j] = 0.0;
      for (int k = 0; k < 5; ++k) coef[j] += vinv[j][k] * vals[k];
    }
    double err = 0.0, scale = 0.0;
    for (double x : kCheckPoints) {
      const double exact = sample(c + h * x);
      err = std::max(err, std::abs(horner(coef, x) - exact));
      scale = std::max(scale, std::abs(exact));
    }
    const double tq = g_.q == 2 ? b * b : 1.0;
    return err <= kRelAccuracy * scale || err * tq <= budget || (b - a) < min_width;
  };

  // Depth-first refinement keeps intervals in ascending order.
  auto refine = [&](auto&& self, double a, double b) -> void {
    std::array<double, 5> coef;
    if (fit(a, b, coef)) {
      nodes_.push_back(b);
      coef_.push_back(coef);
      if (coef_.size() > static_cast<std::size_t>(kMaxIntervals))
        throw Error(ErrorCode::QuadratureFailure, "arclength table refinement did not converge");
      return;
    }
    const double m = 0.5 * (a + b);
    self(self, a, m);
    self(self, m, b);
  };
  for (int i = 0; i < kInitialIntervals; ++i) {
    const double a = g_.t_max * i / kInitialIntervals;
    const double b = (i + 1 == kInitialIntervals) ? g_.t_max : g_.t_max * (i + 1) / kInitialIntervals;
    refine(refine, a, b);
  }

  cum_.assign(nodes_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    cum_[i + 1] = cum_[i] + integrate_interval(i, nodes_[i + 1]);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
    if (!(cum_[i + 1] > cum_[i]) && nodes_[i] > 0.0)
      throw Error(ErrorCode::NumericalFailure, "arclength table is not strictly increasing");
}

double ChartTable::w(double t) const {
  switch (g_.map) {
    case ChartMap::Linear: return g_.anchor + g_.dir * t;
    case ChartMap::Sqrt: return g_.anchor + g_.dir * t * t;
    case ChartMap::Log: return g_.anchor + g_.dir * g_.eps * std::exp(t);
  }
  return 0.0;
}

double ChartTable::dw_dt(double t) const {
  switch (g_.map) {
    case ChartMap::Linear: return g_.dir;
    case ChartMap::Sqrt: return 2.0 * g_.dir * t;
    case ChartMap::Log: return g_.dir * g_.eps * std::exp(t);
  }
  return 0.0;
}

double ChartTable::t_of_w(double wv) const {
  const double off = std::max(0.0, g_.dir * (wv - g_.anchor));
  switch (g_.map) {
    case ChartMap::Linear: return std::min(off, g_.t_max);
    case ChartMap::Sqrt: return std::min(std::sqrt(off), g_.t_max);
    case ChartMap::Log: return std::clamp(std::log(off / g_.eps), 0.0, g_.t_max);
  }
  return 0.0;
}

std::size_t ChartTable::locate(double t) const {
  if (t <= nodes_.front()) return 0;
  if (t >= nodes_.back()) return nodes_.size() - 2;
  return static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), t) -
                                  nodes_.begin()) -
         1;
}

double ChartTable::poly(std::size_t i, double t) const {
  const double a = nodes_[i], b = nodes_[i + 1];
  return horner(coef_[i], (2.0 * t - a - b) / (b - a));
}

double ChartTable::dpoly(std::size_t i, double t) const {
  const double a = nodes_[i], b = nodes_[i + 1];
  return horner_d(coef_[i], (2.0 * t - a - b) / (b - a)) * 2.0 / (b - a);
}

double ChartTable::integrate_interval(std::size_t i, double t_hi) const {
  const double a = nodes_[i];
  const double c = 0.5 * (a + t_hi), h = 0.5 * (t_hi - a);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double t = c + h * quad::kGL4Nodes[k];
    sum += quad::kGL4Weights[k] * tq(t) * poly(i, t);
  }
  return sum * h;
}

double ChartTable::r(double t) const { return poly(locate(t), t); }
double ChartTable::dr(double t) const { return dpoly(locate(t), t); }
double ChartTable::density(double t) const { return tq(t) * r(t); }

double ChartTable::length(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= g_.t_max) return total();
  const std::size_t i = locate(t);
  return cum_[i] + integrate_interval(i, t);
}

double ChartTable::t_of_length(double L) const {
  if (L <= 0.0) return 0.0;
  if (L >= total()) return g_.t_max;
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), L) -
                                                 cum_.begin()) -
                        1;
  const std::size_t k = std::min(i, nodes_.size() - 2);
  double lo = nodes_[k], hi = nodes_[k + 1];
  const double Llo = cum_[k], Lhi = cum_[k + 1];
  double t = lo + (hi - lo) * (L - Llo) / (Lhi - Llo);
  for (int it = 0; it < 100; ++it) {
    const double F = cum_[k] + integrate_interval(k, t) - L;
    if (F == 0.0) return t;
    if (F > 0) hi = t; else lo = t;
    const double d = tq(t) * poly(k, t);
    double next = d > 0 ? t - F / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, std::abs(t)) || hi - lo <= 4e-16 * std::max(1.0, hi))
      return next;
    t = next;
  }
  return t;
}

double ChartTable::wt2_over_density(double t) const {
  const double rv = r(t);
  switch (g_.map) {
    case ChartMap::Linear: return 1.0 / rv;
    case ChartMap::Sqrt: return g_.q == 2 ? 4.0 / rv : 4.0 * t * t / rv;
    case ChartMap::Log: {
      const double e = g_.eps * std::exp(t);
      return e * (e / rv);
    }
  }
  return 0.0;
}

double ChartTable::rho(double t) const {
  const double rv = r(t);
  switch (g_.map) {
    case ChartMap::Linear: return rv;
    case ChartMap::Sqrt: return g_.q == 2 ? 0.5 * t * rv : rv / (2.0 * t);
    case ChartMap::Log: return rv / (g_.eps * std::exp(t));
  }
  return 0.0;
}

double ChartTable::drho_dw(double t) const {
  const double rv = r(t), dv = dr(t);
  double drho_dt = 0.0;
  switch (g_.map) {
    case ChartMap::Linear: drho_dt = dv; break;
    case ChartMap::Sqrt:
      drho_dt = g_.q == 2 ? 0.5 * (rv + t * dv) : (dv * t - rv) / (2.0 * t * t);
      break;
    case ChartMap::Log: drho_dt = (dv - rv) / (g_.eps * std::exp(t)); break;
  }
  return drho_dt / dw_dt(t);
}

}  // namespace weakwave
