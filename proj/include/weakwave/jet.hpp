#pragma once

#include <array>
#include <cmath>

namespace weakwave {

// Truncated bivariate Taylor polynomial in (dt, dx) keeping t-order <= NT and
// x-order <= NX. Coefficient c[i][j] multiplies dt^i dx^j.
template <int NT, int NX>
class Jet {
 public:
  std::array<std::array<double, NX + 1>, NT + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0][0] = v;
    return j;
  }
  static Jet var_t(double v) {
    Jet j = constant(v);
    if constexpr (NT >= 1) j.c[1][0] = 1.0;
    return j;
  }
  static Jet var_x(double v) {
    Jet j = constant(v);
    if constexpr (NX >= 1) j.c[0][1] = 1.0;
    return j;
  }

  double value() const { return c[0][0]; }
  // ∂t^i ∂x^j at the expansion point.
  double partial(int i, int j) const { return c[i][j] * fact(i) * fact(j); }

  friend Jet operator+(Jet a, const Jet& b) {
    for (int i = 0; i <= NT; ++i)
      for (int j = 0; j <= NX; ++j) a.c[i][j] += b.c[i][j];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (int i = 0; i <= NT; ++i)
      for (int j = 0; j <= NX; ++j) a.c[i][j] -= b.c[i][j];
    return a;
  }
  friend Jet operator*(double k, Jet a) {
    for (auto& row : a.c)
      for (auto& v : row) v *= k;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i1 = 0; i1 <= NT; ++i1)
      for (int j1 = 0; j1 <= NX; ++j1) {
        if (a.c[i1][j1] == 0.0) continue;
        for (int i2 = 0; i1 + i2 <= NT; ++i2)
          for (int j2 = 0; j1 + j2 <= NX; ++j2) r.c[i1 + i2][j1 + j2] += a.c[i1][j1] * b.c[i2][j2];
      }
    return r;
  }
  Jet operator-() const { return -1.0 * *this; }

  // Applies a scalar function given its derivatives d[n] = f^{(n)}(value()).
  template <class Derivs>
  Jet compose(const Derivs& d) const {
    Jet delta = *this;
    delta.c[0][0] = 0.0;
    Jet r = constant(d[0]);
    Jet power = constant(1.0);
    double nfact = 1.0;
    for (int n = 1; n <= NT + NX; ++n) {
      power = power * delta;
      nfact *= n;
      r = r + (d[n] / nfact) * power;
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    std::array<double, NT + NX + 1> d;
    const double e = std::exp(a.value());
    d.fill(e);
    return a.compose(d);
  }
  friend Jet reciprocal(const Jet& a) {
    std::array<double, NT + NX + 1> d;
    const double v = a.value();
    double term = 1.0 / v;
    for (int n = 0; n <= NT + NX; ++n) {
      d[n] = term;
      term *= -(n + 1) / v;
    }
    return a.compose(d);
  }

 private:
  static double fact(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  }
};

}  // namespace weakwave
