#include "weakwave/segment.hpp"

#include <algorithm>
#include <cmath>

#include "weakwave/error.hpp"

namespace weakwave {

const char* to_string(Orientation o) {
  return o == Orientation::Increasing ? "inc" : "dec";
}

const char* to_string(EndpointFlag f) {
  switch (f) {
    case EndpointFlag::Regular: return "Regular";
    case EndpointFlag::SingularDerivative: return "SingularDerivative";
    case EndpointFlag::DecayTail: return "DecayTail";
  }
  return "Unknown";
}

const char* to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::Constant: return "Constant";
    case SegmentKind::Monotone: return "Monotone";
    case SegmentKind::ExpPeak: return "ExpPeak";
  }
  return "Unknown";
}

Segment Segment::constant(double wbar, Constants c, double xi_lo, double xi_hi) {
  if (!std::isfinite(wbar)) throw Error(ErrorCode::InvalidInput, "constant value must be finite");
  if (!(xi_lo < xi_hi)) throw Error(ErrorCode::InvalidInput, "constant segment needs xi_lo < xi_hi");
  Segment s;
  s.kind_ = SegmentKind::Constant;
  s.constants_ = c;
  s.w_lo_ = s.w_hi_ = s.w_mid_ = wbar;
  s.xi_lo_ = xi_lo;
  s.xi_hi_ = xi_hi;
  return s;
}

namespace {

ChartGeometry geometry_for(const EndSpec& e, double dir, double w_mid, double eps) {
  ChartGeometry g;
  g.anchor = e.anchor;
  g.dir = dir;
  const double span = std::abs(w_mid - e.anchor);
  if (e.p == 0.5) {
    g.map = ChartMap::Sqrt;
    g.q = 2;
    g.factor = 2.0;
    g.t_max = std::sqrt(span);
  } else if (e.p == 0.0) {
    g.map = ChartMap::Linear;
    g.t_max = span;
  } else if (e.p == -0.5) {
    g.map = ChartMap::Sqrt;
    g.factor = 2.0;
    g.t_max = std::sqrt(span);
  } else if (e.p == -1.0) {
    g.map = ChartMap::Log;
    g.eps = eps;
    if (!(span > eps))
      throw Error(ErrorCode::InvalidInput, "segment shorter than the tail cutoff");
    g.t_max = std::log(span / eps);
  } else {
    throw Error(ErrorCode::NotConstructible, "unsupported endpoint behaviour");
  }
  return g;
}

Endpoint endpoint_for(const EndSpec& e) {
  Endpoint ep;
  if (e.p == 0.5) ep.flag = EndpointFlag::SingularDerivative;
  if (e.p == -1.0) {
    ep.flag = EndpointFlag::DecayTail;
    ep.rate = 1.0 / e.reduced(e.anchor, 0.0);
  }
  return ep;
}

}  // namespace

Segment Segment::monotone(const EndSpec& lo, const EndSpec& hi, Orientation o, Constants c,
                          const Tolerances& tol) {
  if (!(lo.anchor < hi.anchor)) throw Error(ErrorCode::InvalidInput, "monotone segment needs w_lo < w_hi");
  Segment s;
  s.kind_ = SegmentKind::Monotone;
  s.constants_ = c;
  s.orientation_ = o;
  s.w_lo_ = lo.anchor;
  s.w_hi_ = hi.anchor;
  s.w_mid_ = 0.5 * (lo.anchor + hi.anchor);
  const double eps = tol.tail_cutoff_epsilon;
  s.charts_[0] = ChartTable(geometry_for(lo, 1.0, s.w_mid_, eps), lo.reduced, tol.quad_abs_tol);
  s.charts_[1] = ChartTable(geometry_for(hi, -1.0, s.w_mid_, eps), hi.reduced, tol.quad_abs_tol);
  s.end_lo_ = endpoint_for(lo);
  s.end_hi_ = endpoint_for(hi);

  const double Lt = s.length_total();
  const bool lo_tail = s.end_lo_.flag == EndpointFlag::DecayTail;
  const bool hi_tail = s.end_hi_.flag == EndpointFlag::DecayTail;
  const bool left_tail = s.sigma() > 0 ? lo_tail : hi_tail;
  const bool right_tail = s.sigma() > 0 ? hi_tail : lo_tail;
  // ξ(Λ) = xi_a + σΛ; the table's left end sits at 0 unless it borders a tail.
  if (s.sigma() > 0)
    s.xi_a_ = left_tail ? -Lt : 0.0;
  else
    s.xi_a_ = left_tail ? 0.0 : Lt;
  s.xi_lo_ = left_tail ? -kInf : s.xi_tab_lo();
  s.xi_hi_ = right_tail ? kInf : s.xi_tab_hi();
  return s;
}

Segment Segment::exp_peak(double c1, double c2, int e, double gamma0, double x_lo, double x_hi,
                          Constants c) {
  if (!(x_lo < x_hi)) throw Error(ErrorCode::InvalidInput, "exp piece needs x_lo < x_hi");
  if (e != 1 && e != -1) throw Error(ErrorCode::InvalidInput, "exp piece sign must be +-1");
  Segment s;
  s.kind_ = SegmentKind::ExpPeak;
  s.constants_ = c;
  s.c1_ = c1;
  s.c2_ = c2;
  s.e_ = e;
  s.gamma0_ = gamma0;
  s.xi_lo_ = gamma0 + x_lo;
  s.xi_hi_ = gamma0 + x_hi;
  auto limit = [&](double x) {
    if (std::isfinite(x)) return c1 * std::exp(e * x) + c2 * std::exp(-e * x);
    const double grow = (e * x > 0) ? c1 : c2;
    if (grow != 0.0) throw Error(ErrorCode::InvalidInput, "unbounded exp piece on an infinite range");
    return 0.0;
  };
  const double wl = limit(x_lo), wr = limit(x_hi);
  s.orientation_ = wr >= wl ? Orientation::Increasing : Orientation::Decreasing;
  s.w_lo_ = std::min(wl, wr);
  s.w_hi_ = std::max(wl, wr);
  s.w_mid_ = 0.5 * (s.w_lo_ + s.w_hi_);
  Endpoint tail{EndpointFlag::DecayTail, 1.0};
  if (!std::isfinite(x_lo)) (wl <= wr ? s.end_lo_ : s.end_hi_) = tail;
  if (!std::isfinite(x_hi)) (wr >= wl ? s.end_hi_ : s.end_lo_) = tail;
  return s;
}

void Segment::shift(double dx) {
  xi_lo_ += dx;
  xi_hi_ += dx;
  xi_a_ += dx;
  gamma0_ += dx;
}

void Segment::place_left_at(double x) {
  shift(x - xi_lo_);
  xi_lo_ = x;
}

void Segment::place_right_at(double x) {
  shift(x - xi_hi_);
  xi_hi_ = x;
}

double Segment::xi_tab_lo() const { return std::min(xi_a_, xi_a_ + sigma() * length_total()); }
double Segment::xi_tab_hi() const { return std::max(xi_a_, xi_a_ + sigma() * length_total()); }
double Segment::w_tab_lo() const { return charts_[0].w(0.0); }
double Segment::w_tab_hi() const { return charts_[1].w(0.0); }

double Segment::w_of_lambda(double lam) const {
  const double L0 = charts_[0].total();
  const double Lt = L0 + charts_[1].total();
  if (lam < 0.0) {
    if (end_lo_.flag != EndpointFlag::DecayTail) return w_lo_;
    return w_lo_ + charts_[0].geometry().eps * std::exp(end_lo_.rate * lam);
  }
  if (lam <= L0) return charts_[0].w(charts_[0].t_of_length(lam));
  if (lam <= Lt) return charts_[1].w(charts_[1].t_of_length(Lt - lam));
  if (end_hi_.flag != EndpointFlag::DecayTail) return w_hi_;
  return w_hi_ - charts_[1].geometry().eps * std::exp(-end_hi_.rate * (lam - Lt));
}

Slope Segment::slope_lambda_ext(double lam) const {
  const double L0 = charts_[0].total();
  const double Lt = L0 + charts_[1].total();
  const double sg = sigma();
  if (lam < 0.0) {
    if (end_lo_.flag != EndpointFlag::DecayTail) return Slope::finite(0.0);
    const double off = charts_[0].geometry().eps * std::exp(end_lo_.rate * lam);
    return Slope::finite(sg * end_lo_.rate * off);
  }
  if (lam > Lt) {
    if (end_hi_.flag != EndpointFlag::DecayTail) return Slope::finite(0.0);
    const double off = charts_[1].geometry().eps * std::exp(-end_hi_.rate * (lam - Lt));
    return Slope::finite(sg * end_hi_.rate * off);
  }
  const int i = lam <= L0 ? 0 : 1;
  const ChartTable& ch = charts_[i];
  const double t = ch.t_of_length(i == 0 ? lam : Lt - lam);
  const auto& g = ch.geometry();
  if (t == 0.0 && g.map == ChartMap::Sqrt) {
    if (g.q == 2) return Slope::infinite(static_cast<int>(sg));
    return Slope::finite(0.0);
  }
  return Slope::finite(sg / ch.rho(t));
}

double Segment::w_at(double xi) const {
  switch (kind_) {
    case SegmentKind::Constant: return w_lo_;
    case SegmentKind::ExpPeak: {
      const double x = xi - gamma0_;
      return c1_ * std::exp(e_ * x) + c2_ * std::exp(-e_ * x);
    }
    case SegmentKind::Monotone: return w_of_lambda(lambda_of_xi(xi));
  }
  return 0.0;
}

Slope Segment::slope_at(double xi) const {
  switch (kind_) {
    case SegmentKind::Constant: return Slope::finite(0.0);
    case SegmentKind::ExpPeak: {
      const double x = xi - gamma0_;
      return Slope::finite(e_ * (c1_ * std::exp(e_ * x) - c2_ * std::exp(-e_ * x)));
    }
    case SegmentKind::Monotone: return slope_lambda_ext(lambda_of_xi(xi));
  }
  return {};
}

double Segment::w_xi_finite(double xi) const {
  const Slope s = slope_at(xi);
  if (!s.is_finite()) throw Error(ErrorCode::NumericalFailure, "slope is infinite here");
  return s.value;
}

double Segment::w_left_end() const {
  if (std::isfinite(xi_lo_)) return w_at(xi_lo_);
  if (kind_ == SegmentKind::Constant) return w_lo_;
  return sigma() > 0 ? w_lo_ : w_hi_;
}

double Segment::w_right_end() const {
  if (std::isfinite(xi_hi_)) return w_at(xi_hi_);
  if (kind_ == SegmentKind::Constant) return w_lo_;
  return sigma() > 0 ? w_hi_ : w_lo_;
}

Slope Segment::slope_left_end() const {
  if (!std::isfinite(xi_lo_)) return Slope::finite(0.0);
  return slope_at(xi_lo_);
}

Slope Segment::slope_right_end() const {
  if (!std::isfinite(xi_hi_)) return Slope::finite(0.0);
  return slope_at(xi_hi_);
}

bool Segment::in_tail(double xi) const {
  if (kind_ == SegmentKind::ExpPeak) return false;
  if (kind_ != SegmentKind::Monotone) return false;
  const double lam = lambda_of_xi(xi);
  return (lam < 0.0 && end_lo_.flag == EndpointFlag::DecayTail) ||
         (lam > length_total() && end_hi_.flag == EndpointFlag::DecayTail);
}

double Segment::xi_of_w(double w) const {
  if (kind_ != SegmentKind::Monotone) throw Error(ErrorCode::InvalidInput, "xi_of_w needs a monotone segment");
  const double Lt = length_total();
  double lam;
  if (w < w_tab_lo()) {
    if (end_lo_.flag != EndpointFlag::DecayTail || !(w > w_lo_))
      throw Error(ErrorCode::OutOfDomain, "w outside the segment range");
    lam = std::log((w - w_lo_) / charts_[0].geometry().eps) / end_lo_.rate;
  } else if (w > w_tab_hi()) {
    if (end_hi_.flag != EndpointFlag::DecayTail || !(w < w_hi_))
      throw Error(ErrorCode::OutOfDomain, "w outside the segment range");
    lam = Lt - std::log((w_hi_ - w) / charts_[1].geometry().eps) / end_hi_.rate;
  } else if (w <= w_mid_) {
    lam = charts_[0].length(charts_[0].t_of_w(w));
  } else {
    lam = Lt - charts_[1].length(charts_[1].t_of_w(w));
  }
  return xi_a_ + sigma() * lam;
}

double Segment::dxi_dw(double w) const {
  const int i = w <= w_mid_ ? 0 : 1;
  return sigma() * charts_[i].rho(charts_[i].t_of_w(w));
}

double Segment::d2xi_dw2(double w) const {
  const int i = w <= w_mid_ ? 0 : 1;
  return sigma() * charts_[i].drho_dw(charts_[i].t_of_w(w));
}

ChartSample Segment::chart_sample(int i, double t) const {
  const ChartTable& ch = charts_[i];
  const double Lt = length_total();
  const double lam = i == 0 ? ch.length(t) : Lt - ch.length(t);
  ChartSample s;
  s.xi = xi_a_ + sigma() * lam;
  s.w = ch.w(t);
  s.jac = ch.density(t);
  s.wxi_jac = sigma() * std::abs(ch.dw_dt(t));
  s.wxi2_jac = ch.wt2_over_density(t);
  return s;
}

double Segment::chart_t_of_xi(int i, double xi) const {
  const double lam = lambda_of_xi(xi);
  return i == 0 ? charts_[0].t_of_length(lam) : charts_[1].t_of_length(length_total() - lam);
}

}  // namespace weakwave
