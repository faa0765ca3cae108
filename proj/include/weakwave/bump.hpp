#pragma once

#include <array>

namespace weakwave::verify {

enum class Partial { Phi, PhiT, PhiX, PhiXX, PhiTX, PhiTXX };
const char* to_string(Partial p);

struct BumpTestFunction {
  double gamma0 = 0.0;
  double s = 0.0;
  double d_x = 1.0;
  double t_lo = 0.0, t_hi = 1.0;
  double amplitude = 1.0;

  double t_center() const { return 0.5 * (t_lo + t_hi); }
  double gamma(double t) const { return gamma0 + s * t; }
  void validate() const;
};

// Exact partials from forward-mode jets through the exponent.
double bump_eval(const BumpTestFunction& b, double t, double x, Partial which);
std::array<double, 6> bump_eval_all(const BumpTestFunction& b, double t, double x);

// Separable factors φ = amplitude·X(ξ - γ0)·Θ(t) in traveling coordinates.
// X and its first three derivatives at y = ξ - γ0.
std::array<double, 4> bump_space_factor(double d_x, double y);
// Θ and Θ' at t.
std::array<double, 2> bump_time_factor(const BumpTestFunction& b, double t);

}  // namespace weakwave::verify
