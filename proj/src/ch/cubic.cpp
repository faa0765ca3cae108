#include "weakwave/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weakwave::ch {

double g_value(double s, double a, double b, double w) { return ((-w + s) * w + 2.0 * a) * w + b; }

double g_prime(double s, double a, double w) { return (-3.0 * w + 2.0 * s) * w + 2.0 * a; }

namespace {

// Newton polishing on g; keeps an iterate only if it reduces |g|.
double polish(double s, double a, double b, double z) {
  for (int it = 0; it < 4; ++it) {
    const double gz = g_value(s, a, b, z);
    const double dz = g_prime(s, a, z);
    if (gz == 0.0 || dz == 0.0) break;
    const double next = z - gz / dz;
    if (!(std::abs(g_value(s, a, b, next)) < std::abs(gz))) break;
    z = next;
  }
  return z;
}

}  // namespace

CubicAnalysis analyze_g(double s, double a, double b) {
  CubicAnalysis r;
  r.s = s;
  r.a = a;
  r.b = b;
  r.f_coeffs = {-1.0, s, 2.0 * a, 0.0};
  r.g_coeffs = {-1.0, s, 2.0 * a, b};
  const double D = s * s + 6.0 * a;
  r.crit_exists = D > 0.0;
  if (r.crit_exists) {
    r.w_min = (s - std::sqrt(D)) / 3.0;
    r.w_max = (s + std::sqrt(D)) / 3.0;
  }

  const double p = -2.0 * a - s * s / 3.0;
  const double q = -b - 2.0 * a * s / 3.0 - 2.0 * s * s * s / 27.0;
  const double shift = s / 3.0;
  r.discriminant = -4.0 * p * p * p - 27.0 * q * q;
  const double scale = 1.0 + std::abs(s) + std::abs(a) + std::abs(b);
  const double gtol = 1e-9 * (1.0 + std::abs(b));

  if (std::abs(r.discriminant) < 1e-10 * std::pow(scale, 6)) {
    if (std::abs(p) <= 1e-14 * scale * scale) {
      r.zeros = {{shift, 3}};
      return r;
    }
    double zd = -3.0 * q / (2.0 * p) + shift;
    if (r.crit_exists)
      zd = std::abs(zd - r.w_min) <= std::abs(zd - r.w_max) ? r.w_min : r.w_max;
    const double eta = s - 2.0 * zd;
    if (std::abs(g_value(s, a, b, zd)) <= gtol && std::abs(g_prime(s, a, zd)) <= 1e-7 &&
        std::abs(g_value(s, a, b, eta)) <= 1e-7 * scale * scale * scale) {
      r.zeros = {{zd, 2}, {eta, 1}};
      std::sort(r.zeros.begin(), r.zeros.end(),
                [](const Zero& x, const Zero& y) { return x.value < y.value; });
      return r;
    }
  }

  if (r.discriminant > 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double y = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      r.zeros.push_back({polish(s, a, b, y + shift), 1});
    }
    std::sort(r.zeros.begin(), r.zeros.end(),
              [](const Zero& x, const Zero& y) { return x.value < y.value; });
    return r;
  }

  const double root = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const double A = -std::copysign(std::cbrt(std::abs(q) / 2.0 + root), q);
  const double B = A != 0.0 ? -p / (3.0 * A) : 0.0;
  const double z = polish(s, a, b, A + B + shift);
  r.zeros = {{z, 1}};
  r.has_complex_pair = true;
  r.quad_p1 = z - s;
  r.quad_p0 = -2.0 * a - z * (s - z);
  return r;
}

}  // namespace weakwave::ch
