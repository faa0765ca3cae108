#include "weakwave/bump.hpp"

#include <cmath>

#include "weakwave/error.hpp"
#include "weakwave/jet.hpp"

namespace weakwave::verify {

namespace {
constexpr double kExponentFloor = -700.0;
}

const char* to_string(Partial p) {
  switch (p) {
    case Partial::Phi: return "phi";
    case Partial::PhiT: return "phi_t";
    case Partial::PhiX: return "phi_x";
    case Partial::PhiXX: return "phi_xx";
    case Partial::PhiTX: return "phi_tx";
    case Partial::PhiTXX: return "phi_txx";
  }
  return "unknown";
}

void BumpTestFunction::validate() const {
  if (!(d_x > 0.0) || !std::isfinite(d_x)) throw Error(ErrorCode::InvalidInput, "bump half-width must be positive");
  if (!(t_lo < t_hi)) throw Error(ErrorCode::InvalidInput, "bump needs t_lo < t_hi");
  if (!std::isfinite(gamma0) || !std::isfinite(s) || !std::isfinite(amplitude))
    throw Error(ErrorCode::InvalidInput, "bump parameters must be finite");
}

std::array<double, 6> bump_eval_all(const BumpTestFunction& b, double t, double x) {
  using J = Jet<1, 2>;
  std::array<double, 6> out{};
  const double half = 0.5 * (b.t_hi - b.t_lo);
  const double r0 = x - b.gamma(t);
  const double tau0 = t - b.t_center();
  if (!(b.d_x * b.d_x - r0 * r0 > 0.0) || !(half * half - tau0 * tau0 > 0.0)) return out;
  const J T = J::var_t(t);
  const J X = J::var_x(x);
  const J r = X - b.s * T - J::constant(b.gamma0);
  const J tau = T - J::constant(b.t_center());
  const J A = J::constant(b.d_x * b.d_x) - r * r;
  const J B = J::constant(half * half) - tau * tau;
  const J E = -(reciprocal(A) + reciprocal(B));
  if (E.value() < kExponentFloor) return out;
  const J phi = b.amplitude * exp(E);
  out[0] = phi.partial(0, 0);
  out[1] = phi.partial(1, 0);
  out[2] = phi.partial(0, 1);
  out[3] = phi.partial(0, 2);
  out[4] = phi.partial(1, 1);
  out[5] = phi.partial(1, 2);
  return out;
}

double bump_eval(const BumpTestFunction& b, double t, double x, Partial which) {
  return bump_eval_all(b, t, x)[static_cast<int>(which)];
}

std::array<double, 4> bump_space_factor(double d_x, double y) {
  using J = Jet<0, 3>;
  std::array<double, 4> out{};
  if (!(d_x * d_x - y * y > 0.0)) return out;
  const J Y = J::var_x(y);
  const J E = -reciprocal(J::constant(d_x * d_x) - Y * Y);
  if (E.value() < kExponentFloor) return out;
  const J X = exp(E);
  for (int j = 0; j < 4; ++j) out[j] = X.partial(0, j);
  return out;
}

std::array<double, 2> bump_time_factor(const BumpTestFunction& b, double t) {
  using J = Jet<1, 0>;
  std::array<double, 2> out{};
  const double half = 0.5 * (b.t_hi - b.t_lo);
  const double tau0 = t - b.t_center();
  if (!(half * half - tau0 * tau0 > 0.0)) return out;
  const J tau = J::var_t(t) - J::constant(b.t_center());
  const J E = -reciprocal(J::constant(half * half) - tau * tau);
  if (E.value() < kExponentFloor) return out;
  const J th = exp(E);
  out[0] = th.partial(0, 0);
  out[1] = th.partial(1, 0);
  return out;
}

}  // namespace weakwave::verify
