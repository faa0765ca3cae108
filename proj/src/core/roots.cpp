#include "weakwave/roots.hpp"

#include <cmath>

namespace weakwave::roots {

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  if (fa == 0.0) return a;
  const double fb = f(b);
  if (fb == 0.0) return b;
  for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 300 && std::abs(b - a) > tol; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f, double a, double b,
                                       int n) {
  std::vector<Bracket> out;
  double x0 = a, f0 = f(a);
  if (f0 == 0.0) out.push_back({a, a});
  for (int i = 1; i <= n; ++i) {
    const double x1 = (i == n) ? b : a + (b - a) * i / n;
    const double f1 = f(x1);
    if (f1 == 0.0) {
      out.push_back({x1, x1});
    } else if (f0 != 0.0 && (f0 < 0) != (f1 < 0)) {
      out.push_back({x0, x1});
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

}  // namespace weakwave::roots
