#include "weakwave/profile.hpp"

#include <algorithm>
#include <cmath>

#include "weakwave/error.hpp"

namespace weakwave {

const char* to_string(Equation e) { return e == Equation::Nvw ? "nvw" : "ch"; }

const char* to_string(GlueKind k) {
  switch (k) {
    case GlueKind::Cusp: return "Cusp";
    case GlueKind::InflectionSingular: return "InflectionSingular";
    case GlueKind::ConstantJunction: return "ConstantJunction";
    case GlueKind::Peak: return "Peak";
    case GlueKind::SmoothC1: return "SmoothC1";
  }
  return "Unknown";
}

bool Profile::admissible() const {
  return std::all_of(breakpoints.begin(), breakpoints.end(),
                     [](const GluePoint& g) { return g.verdict.admissible; });
}

namespace {

std::size_t owning_segment(const Profile& p, double xi) {
  if (p.segments.empty()) throw Error(ErrorCode::InvalidInput, "profile has no segments");
  if (!(xi >= p.xi_lo() && xi <= p.xi_hi()))
    throw Error(ErrorCode::OutOfDomain, "xi outside the profile domain");
  auto it = std::lower_bound(p.segments.begin(), p.segments.end(), xi,
                             [](const Segment& s, double x) { return s.xi_hi() < x; });
  if (it == p.segments.end()) --it;
  return static_cast<std::size_t>(it - p.segments.begin());
}

}  // namespace

PointEval profile_eval(const Profile& p, double xi) {
  const std::size_t i = owning_segment(p, xi);
  const Segment& seg = p.segments[i];
  PointEval r;
  if (xi == seg.xi_hi() && i + 1 < p.segments.size()) {
    const Segment& next = p.segments[i + 1];
    r.w = seg.w_right_end();
    r.left_slope = seg.slope_right_end();
    r.right_slope = next.slope_left_end();
    return r;
  }
  r.w = seg.w_at(xi);
  if (xi == seg.xi_lo() && i > 0) {
    r.left_slope = p.segments[i - 1].slope_right_end();
    r.right_slope = seg.slope_left_end();
    return r;
  }
  r.left_slope = r.right_slope = seg.slope_at(xi);
  return r;
}

std::vector<SampleRow> profile_sample(const Profile& p, const std::vector<double>& xi_grid) {
  std::vector<SampleRow> rows;
  rows.reserve(xi_grid.size());
  for (double xi : xi_grid) {
    const PointEval e = profile_eval(p, xi);
    SampleRow row{xi, e.w, e.left_slope, e.right_slope, "ok"};
    const bool same = e.left_slope.inf == e.right_slope.inf &&
                      e.left_slope.value == e.right_slope.value;
    if (!e.left_slope.is_finite() || !e.right_slope.is_finite() || !same) {
      row.flag = "singular";
    } else {
      const Segment& seg = p.segments[owning_segment(p, xi)];
      if (seg.in_tail(xi)) row.flag = "tail";
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::vector<double> interior_grid(const Segment& seg, int n) {
  std::vector<double> w(n);
  const double lo = seg.w_tab_lo(), hi = seg.w_tab_hi();
  for (int i = 0; i < n; ++i) w[i] = lo + (hi - lo) * (i + 0.5) / n;
  return w;
}

}  // namespace

double nvw_invariant_residual(const Segment& seg, const CoefficientSpec& spec, double s, int n) {
  if (seg.kind() != SegmentKind::Monotone) return 0.0;
  const double k = std::get<NvwConstants>(seg.constants()).k;
  double worst = 0.0;
  for (double w : interior_grid(seg, n)) {
    const double xp = seg.dxi_dw(w);
    const double c = spec.eval(w).c;
    const double res = std::abs((s * s - c * c) / (xp * xp) - k) / (1.0 + std::abs(k));
    worst = std::max(worst, res);
  }
  return worst;
}

double ch_invariant_residual(const Segment& seg, double s, int n) {
  if (seg.kind() != SegmentKind::Monotone) return 0.0;
  const auto [a, b] = std::get<ChConstants>(seg.constants());
  double worst = 0.0;
  for (double w : interior_grid(seg, n)) {
    const double xp = seg.dxi_dw(w);
    const double res =
        std::abs(-s * w * w + w * w * w + (s - w) / (xp * xp) - 2.0 * a * w - b) / (1.0 + std::abs(b));
    worst = std::max(worst, res);
  }
  return worst;
}

GluePoint make_glue_point(const std::vector<Segment>& segs, std::size_t left) {
  const Segment& l = segs[left];
  const Segment& r = segs[left + 1];
  GluePoint g;
  g.xi_star = l.xi_hi();
  g.w_star = l.w_right_end();
  g.left_slope = l.slope_right_end();
  g.right_slope = r.slope_left_end();
  g.left_constants = l.constants();
  g.right_constants = r.constants();
  g.left_segment = left;
  return g;
}

}  // namespace weakwave
