#pragma once

#include <array>
#include <functional>
#include <vector>

namespace weakwave {

// How a chart parameter t >= 0 maps onto w, measured from an anchor value.
//   Linear: w = anchor + dir*t
//   Sqrt:   w = anchor + dir*t^2
//   Log:    w = anchor + dir*eps*exp(t)
enum class ChartMap { Linear, Sqrt, Log };

struct ChartGeometry {
  ChartMap map = ChartMap::Linear;
  double anchor = 0.0;
  double dir = 1.0;
  double eps = 0.0;    // Log only
  double t_max = 0.0;  // parameter value of the far end
  int q = 0;           // the arclength density carries a factor t^q (0 or 2)
  double factor = 1.0; // constant multiplying the reduced density
};

// Arclength table L(t) = ∫ D, with D(t) = t^q * r(t) and r a piecewise quartic
// interpolant of factor * reduced(w(t), |w(t) - anchor|).
class ChartTable {
 public:
  using Reduced = std::function<double(double w, double off)>;

  ChartTable() = default;
  // Throws QuadratureFailure when refinement stalls and NumericalFailure-class
  // errors when the density is not strictly positive.
  ChartTable(const ChartGeometry& g, const Reduced& reduced, double abs_tol);

  const ChartGeometry& geometry() const { return g_; }

  double w(double t) const;
  double dw_dt(double t) const;
  double t_of_w(double w) const;

  double r(double t) const;
  double dr(double t) const;
  double density(double t) const;  // dL/dt
  double length(double t) const;   // L(t)
  double total() const { return cum_.back(); }
  double t_of_length(double L) const;

  // w_t^2 / D evaluated without cancellation.
  double wt2_over_density(double t) const;
  // dξ/dw magnitude, i.e. D / |w_t|, and its w-derivative.
  double rho(double t) const;
  double drho_dw(double t) const;

  std::size_t intervals() const { return nodes_.size() - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& cumulative() const { return cum_; }

 private:
  std::size_t locate(double t) const;
  double poly(std::size_t i, double t) const;
  double dpoly(std::size_t i, double t) const;
  double tq(double t) const { return g_.q == 2 ? t * t : 1.0; }
  double integrate_interval(std::size_t i, double t_hi) const;

  ChartGeometry g_;
  std::vector<double> nodes_;
  std::vector<std::array<double, 5>> coef_;  // monomials in x ∈ [-1, 1]
  std::vector<double> cum_;
};

}  // namespace weakwave
