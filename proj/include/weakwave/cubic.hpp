#pragma once

#include <array>
#include <vector>

namespace weakwave::ch {

struct Zero {
  double value = 0.0;
  int multiplicity = 1;
};

// Zero structure of g(w) = -w³ + s·w² + 2a·w + b.
struct CubicAnalysis {
  double s = 0.0, a = 0.0, b = 0.0;
  std::array<double, 4> f_coeffs{};  // (-1, s, 2a, 0)
  std::array<double, 4> g_coeffs{};  // (-1, s, 2a, b)
  bool crit_exists = false;
  double w_min = 0.0, w_max = 0.0;
  double discriminant = 0.0;
  std::vector<Zero> zeros;  // ascending
  // Quadratic factor -(w² + p1·w + p0) left over when only one zero is real.
  bool has_complex_pair = false;
  double quad_p1 = 0.0, quad_p0 = 0.0;
};

double g_value(double s, double a, double b, double w);
double g_prime(double s, double a, double w);

CubicAnalysis analyze_g(double s, double a, double b);

}  // namespace weakwave::ch
