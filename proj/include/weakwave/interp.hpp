#pragma once

#include <vector>

namespace weakwave {

// Natural cubic spline through (x_i, y_i); constant extension outside the nodes.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  struct Value {
    double f, df, d2f;
  };
  Value eval(double x) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& second_derivatives() const { return m_; }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace weakwave
