#pragma once

#include <functional>
#include <limits>
#include <variant>

#include "weakwave/chart.hpp"
#include "weakwave/tolerance.hpp"

namespace weakwave {

struct NvwConstants {
  double k = 0.0;
};
struct ChConstants {
  double a = 0.0;
  double b = 0.0;
};
using Constants = std::variant<NvwConstants, ChConstants>;

enum class Orientation { Increasing, Decreasing };
enum class EndpointFlag { Regular, SingularDerivative, DecayTail };
enum class SegmentKind { Constant, Monotone, ExpPeak };

const char* to_string(Orientation o);
const char* to_string(EndpointFlag f);
const char* to_string(SegmentKind k);

// Extended real: value when finite, otherwise the sign of the infinity.
struct Slope {
  double value = 0.0;
  int inf = 0;

  static Slope finite(double v) { return {v, 0}; }
  static Slope infinite(int sign) { return {0.0, sign > 0 ? 1 : -1}; }
  bool is_finite() const { return inf == 0; }
  int sign() const { return inf != 0 ? inf : (value > 0) - (value < 0); }
};

struct Endpoint {
  EndpointFlag flag = EndpointFlag::Regular;
  double rate = 0.0;  // DecayTail only
};

// One end of a monotone piece handed to the builder. p is the exponent of the
// local density behaviour ρ ~ |w - anchor|^p and reduced(w, off) = ρ·off^-p.
struct EndSpec {
  double anchor = 0.0;
  double p = 0.0;  // one of 0.5, 0, -0.5, -1
  ChartTable::Reduced reduced;
};

// Point on a chart used for quadrature in the chart parameter.
struct ChartSample {
  double xi, w;
  double jac;       // |dξ/dt|
  double wxi_jac;   // w_ξ·|dξ/dt|
  double wxi2_jac;  // w_ξ²·|dξ/dt|
};

class Segment {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  static Segment constant(double wbar, Constants c, double xi_lo, double xi_hi);
  // Monotone piece between lo.anchor < hi.anchor. The table starts with its
  // left ξ-end at 0, or its right ξ-end at 0 when the left end is a tail.
  static Segment monotone(const EndSpec& lo, const EndSpec& hi, Orientation o, Constants c,
                          const Tolerances& tol);
  // w = c1·e^{e·x} + c2·e^{-e·x}, x = ξ - gamma0 ∈ [x_lo, x_hi].
  static Segment exp_peak(double c1, double c2, int e, double gamma0, double x_lo, double x_hi,
                          Constants c);

  SegmentKind kind() const { return kind_; }
  const Constants& constants() const { return constants_; }
  Orientation orientation() const { return orientation_; }
  int sigma() const { return orientation_ == Orientation::Increasing ? 1 : -1; }

  double w_lo() const { return w_lo_; }
  double w_hi() const { return w_hi_; }
  double xi_lo() const { return xi_lo_; }
  double xi_hi() const { return xi_hi_; }
  const Endpoint& endpoint_lo() const { return end_lo_; }
  const Endpoint& endpoint_hi() const { return end_hi_; }
  double wbar() const { return w_lo_; }

  void shift(double dx);
  // Shift so that the left (right) ξ-end lands exactly on x.
  void place_left_at(double x);
  void place_right_at(double x);
  Segment shifted(double dx) const {
    Segment s = *this;
    s.shift(dx);
    return s;
  }

  double w_at(double xi) const;
  Slope slope_at(double xi) const;
  double w_xi_finite(double xi) const;  // only where the slope is finite
  double w_left_end() const;
  double w_right_end() const;
  Slope slope_left_end() const;
  Slope slope_right_end() const;
  bool in_tail(double xi) const;

  // Monotone only: w-parametrization ξ(w), ξ'(w), ξ''(w) on the tabulated range.
  double xi_of_w(double w) const;
  double dxi_dw(double w) const;
  double d2xi_dw2(double w) const;
  double w_tab_lo() const;
  double w_tab_hi() const;
  double w_mid() const { return w_mid_; }

  // Monotone only: chart 0 is anchored at w_lo, chart 1 at w_hi.
  const ChartTable& chart(int i) const { return charts_[i]; }
  double xi_tab_origin() const { return xi_a_; }
  double length_total() const { return charts_[0].total() + charts_[1].total(); }
  ChartSample chart_sample(int i, double t) const;
  double chart_t_of_xi(int i, double xi) const;
  double xi_tab_lo() const;
  double xi_tab_hi() const;
  double lambda_of_xi(double xi) const { return sigma() * (xi - xi_a_); }

  // ExpPeak only.
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  int exp_sign() const { return e_; }
  double gamma0() const { return gamma0_; }

 private:
  double w_of_lambda(double lam) const;
  Slope slope_lambda_ext(double lam) const;

  SegmentKind kind_ = SegmentKind::Constant;
  Constants constants_;
  Orientation orientation_ = Orientation::Increasing;
  double w_lo_ = 0, w_hi_ = 0, w_mid_ = 0;
  double xi_lo_ = 0, xi_hi_ = 0;
  Endpoint end_lo_, end_hi_;
  ChartTable charts_[2];
  double xi_a_ = 0.0;
  double c1_ = 0, c2_ = 0, gamma0_ = 0;
  int e_ = 1;
};

}  // namespace weakwave
