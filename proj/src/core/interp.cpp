#include "weakwave/interp.hpp"

#include <algorithm>

#include "weakwave/error.hpp"

namespace weakwave {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error(ErrorCode::InvalidInput, "spline needs >= 2 nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw Error(ErrorCode::InvalidInput, "spline nodes must increase");
  m_.assign(n, 0.0);
  if (n == 2) return;
  // Thomas algorithm for the natural spline second derivatives.
  std::vector<double> sub(n, 0.0), diag(n, 1.0), sup(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    sub[i] = h0 / 6.0;
    diag[i] = (h0 + h1) / 3.0;
    sup[i] = h1 / 6.0;
    rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
}

CubicSpline::Value CubicSpline::eval(double x) const {
  if (x <= x_.front()) return {y_.front(), 0.0, 0.0};
  if (x >= x_.back()) return {y_.back(), 0.0, 0.0};
  const std::size_t i =
      static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
  const double f = A * y_[i] + B * y_[i + 1] +
                   ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
  const double df = (y_[i + 1] - y_[i]) / h - (3 * A * A - 1) / 6.0 * h * m_[i] +
                    (3 * B * B - 1) / 6.0 * h * m_[i + 1];
  const double d2f = A * m_[i] + B * m_[i + 1];
  return {f, df, d2f};
}

}  // namespace weakwave
