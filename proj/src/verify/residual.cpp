#include "weakwave/residual.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "weakwave/ch.hpp"
#include "weakwave/error.hpp"
#include "weakwave/nvw.hpp"
#include "weakwave/quadrature.hpp"

namespace weakwave::verify {

namespace {

constexpr int kNormPanels = 64;

// Profile data at one quadrature node, already multiplied by |dξ/du|.
struct Node {
  double y;      // ξ - γ0
  double w;
  double jac;
  double wxi;    // w_ξ·jac
  double wxi2;   // w_ξ²·jac
};

// Integrand weights of the two time moments: R = amp·∫(Θ0·G0 + Θ1·G1) dξ.
struct Moments {
  double th0, th1;
};

class Integrand {
 public:
  Integrand(const Profile& p, const BumpTestFunction& b, Moments m) : p_(p), b_(b), m_(m) {}

  double operator()(const Node& n) const {
    const auto X = bump_space_factor(b_.d_x, n.y);
    const double s = p_.s;
    double g0, g1;
    if (p_.equation == Equation::Nvw) {
      const CoefValue c = p_.coefficient->eval(n.w);
      g0 = n.wxi * (c.c * c.c - s * s) * X[1] + c.c * c.cp * n.wxi2 * X[0];
      g1 = s * n.wxi * X[0];
    } else {
      const double w = n.w;
      g0 = (-s * w * X[1] + s * w * X[3] + 1.5 * w * w * X[1]) * n.jac + w * n.wxi * X[2] +
           0.5 * n.wxi2 * X[1];
      g1 = (w * X[0] - w * X[2]) * n.jac;
    }
    return m_.th0 * g0 + m_.th1 * g1;
  }

 private:
  const Profile& p_;
  const BumpTestFunction& b_;
  Moments m_;
};

struct Accum {
  double value = 0.0, error = 0.0;
  int cells = 0;
  void add(const quad::Result& r) {
    if (!r.converged) throw Error(ErrorCode::QuadratureFailure, "residual quadrature did not converge");
    value += r.value;
    error += r.error;
    cells += r.cells;
  }
};

void integrate_segment(const Segment& seg, double lo, double hi, const Integrand& f, double gamma0,
                       const BumpTestFunction& b, Moments m, const Profile& p, double tol, Accum& acc) {
  switch (seg.kind()) {
    case SegmentKind::Constant: {
      // w_ξ = 0: only the X', X''' and Θ1 terms survive; the derivative terms integrate exactly.
      const double w = seg.wbar();
      const auto Xa = bump_space_factor(b.d_x, lo - gamma0);
      const auto Xb = bump_space_factor(b.d_x, hi - gamma0);
      if (p.equation == Equation::Ch) {
        const double s = p.s;
        const double c1 = -s * w + 1.5 * w * w, c3 = s * w;
        acc.value += m.th0 * (c1 * (Xb[0] - Xa[0]) + c3 * (Xb[2] - Xa[2]));
        if (m.th1 != 0.0) {
          auto g = [&](double xi) {
            const auto X = bump_space_factor(b.d_x, xi - gamma0);
            return m.th1 * w * X[0];
          };
          acc.add(quad::integrate(g, lo, hi, tol));
          acc.value -= m.th1 * w * (Xb[1] - Xa[1]);
        }
      }
      return;
    }
    case SegmentKind::ExpPeak: {
      auto g = [&](double xi) {
        const double x = xi - seg.gamma0();
        const double e = seg.exp_sign();
        const double w = seg.c1() * std::exp(e * x) + seg.c2() * std::exp(-e * x);
        const double wx = e * (seg.c1() * std::exp(e * x) - seg.c2() * std::exp(-e * x));
        return f(Node{xi - gamma0, w, 1.0, wx, wx * wx});
      };
      acc.add(quad::integrate(g, lo, hi, tol));
      return;
    }
    case SegmentKind::Monotone: break;
  }
  // Tails are integrated in ξ.
  const double tab_lo = seg.xi_tab_lo(), tab_hi = seg.xi_tab_hi();
  auto tail = [&](double a, double c) {
    if (!(a < c)) return;
    auto g = [&](double xi) {
      const double wx = seg.w_xi_finite(xi);
      return f(Node{xi - gamma0, seg.w_at(xi), 1.0, wx, wx * wx});
    };
    acc.add(quad::integrate(g, a, c, tol));
  };
  const bool left_tail = (seg.sigma() > 0 ? seg.endpoint_lo() : seg.endpoint_hi()).flag == EndpointFlag::DecayTail;
  const bool right_tail = (seg.sigma() > 0 ? seg.endpoint_hi() : seg.endpoint_lo()).flag == EndpointFlag::DecayTail;
  if (left_tail) tail(lo, std::min(hi, tab_lo));
  if (right_tail) tail(std::max(lo, tab_hi), hi);
  // Charts are integrated in their own parameter.
  const double xi_mid = seg.xi_tab_origin() + seg.sigma() * seg.chart(0).total();
  for (int i = 0; i < 2; ++i) {
    const double e1 = i == 0 ? seg.xi_tab_origin() : xi_mid;
    const double e2 = i == 0 ? xi_mid : seg.xi_tab_origin() + seg.sigma() * seg.length_total();
    const double a = std::max(lo, std::min(e1, e2)), c = std::min(hi, std::max(e1, e2));
    if (!(a < c)) continue;
    double t1 = seg.chart_t_of_xi(i, a), t2 = seg.chart_t_of_xi(i, c);
    if (t1 > t2) std::swap(t1, t2);
    if (!(t1 < t2)) continue;
    auto g = [&](double t) {
      const ChartSample cs = seg.chart_sample(i, t);
      return f(Node{cs.xi - gamma0, cs.w, cs.jac, cs.wxi_jac, cs.wxi2_jac});
    };
    acc.add(quad::integrate(g, t1, t2, tol));
  }
}

// Composite fixed Kronrod rule on [a, b].
void fixed_rule(double a, double b, int panels, std::vector<double>& x, std::vector<double>& w) {
  x.clear();
  w.clear();
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double c = a + h * (k + 0.5), hh = 0.5 * h;
    for (int j = 0; j < 8; ++j) {
      x.push_back(c - hh * quad::kKronrodNodes[j]);
      w.push_back(hh * quad::kKronrodWeights[j]);
      if (j < 7) {
        x.push_back(c + hh * quad::kKronrodNodes[j]);
        w.push_back(hh * quad::kKronrodWeights[j]);
      }
    }
  }
}

double normalization(Equation eq, const BumpTestFunction& b) {
  std::vector<double> ys, wy, ts, wt;
  fixed_rule(-b.d_x, b.d_x, kNormPanels, ys, wy);
  fixed_rule(b.t_lo, b.t_hi, kNormPanels, ts, wt);
  std::vector<std::array<double, 4>> X(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) X[i] = bump_space_factor(b.d_x, ys[i]);
  std::vector<std::array<double, 2>> T(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) T[k] = bump_time_factor(b, ts[k]);
  const double s = b.s;
  double total = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    double row = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const auto& x = X[i];
      const auto& th = T[k];
      const double phi = x[0] * th[0];
      const double phi_t = -s * x[1] * th[0] + x[0] * th[1];
      const double phi_x = x[1] * th[0];
      double v;
      if (eq == Equation::Nvw) {
        v = std::abs(phi) + std::abs(phi_t) + std::abs(phi_x);
      } else {
        const double phi_txx = -s * x[3] * th[0] + x[2] * th[1];
        const double phi_xx = x[2] * th[0];
        v = std::abs(phi_t) + std::abs(phi_txx) + std::abs(phi_x) + std::abs(phi_xx);
      }
      row += wy[i] * v;
    }
    total += wt[k] * row;
  }
  return std::abs(b.amplitude) * total;
}

ResidualResult residual_impl(const Profile& p, const BumpTestFunction& b0, const Tolerances& tol) {
  b0.validate();
  BumpTestFunction b = b0;
  if (std::abs(b.s - p.s) > 0.0) b.s = p.s;
  const double A = b.gamma0 - b.d_x, B = b.gamma0 + b.d_x;
  if (A < p.xi_lo() || B > p.xi_hi())
    throw Error(ErrorCode::UnsupportedOverlap, "bump support extends past the profile domain");

  ResidualResult res;
  res.bump = b;
  res.N = normalization(p.equation, b);
  res.cells = 2 * kNormPanels;

  auto th = [&](int j) {
    return quad::integrate([&](double t) { return bump_time_factor(b, t)[j]; }, b.t_lo, b.t_hi,
                           1e-15 * (b.t_hi - b.t_lo));
  };
  const auto th0 = th(0), th1 = th(1);
  const Moments m{th0.value, th1.value};
  res.cells += th0.cells + th1.cells;
  const Integrand f(p, b, m);

  const double target = tol.quad_abs_tol * res.N / 10.0 / std::max(std::abs(b.amplitude), 1e-300);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < p.segments.size(); ++i)
    if (p.segments[i].xi_hi() > A && p.segments[i].xi_lo() < B) touched.push_back(i);
  Accum acc;
  const double per = 0.5 * target / std::max<std::size_t>(touched.size() * 4, 1);
  for (std::size_t i : touched) {
    const Segment& seg = p.segments[i];
    integrate_segment(seg, std::max(A, seg.xi_lo()), std::min(B, seg.xi_hi()), f, b.gamma0, b, m, p, per, acc);
  }
  res.R = b.amplitude * acc.value;
  res.quad_error = std::abs(b.amplitude) * acc.error + std::abs(res.R) * 1e-15;
  res.cells += acc.cells;
  res.normalized = std::abs(res.R) / res.N;
  return res;
}

}  // namespace

ResidualResult residual_nvw(const Profile& p, const CoefficientSpec& spec, double s,
                            const BumpTestFunction& b, const Tolerances& tol) {
  if (p.equation != Equation::Nvw) throw Error(ErrorCode::InvalidInput, "profile is not a NVW profile");
  Profile q = p;
  q.coefficient = spec;
  q.s = s;
  return residual_impl(q, b, tol);
}

ResidualResult residual_ch(const Profile& p, double s, const BumpTestFunction& b, const Tolerances& tol) {
  if (p.equation != Equation::Ch) throw Error(ErrorCode::InvalidInput, "profile is not a CH profile");
  if (s == p.s) return residual_impl(p, b, tol);
  Profile q = p;
  q.s = s;
  return residual_impl(q, b, tol);
}

ResidualResult residual(const Profile& p, const BumpTestFunction& b, const Tolerances& tol) {
  if (p.equation == Equation::Nvw && !p.coefficient)
    throw Error(ErrorCode::InvalidInput, "NVW profile lacks its coefficient");
  return residual_impl(p, b, tol);
}

JumpEntry jump_report(const Profile& p, std::size_t glue_index) {
  if (glue_index >= p.breakpoints.size()) throw Error(ErrorCode::InvalidInput, "glue index out of range");
  const GluePoint& g = p.breakpoints[glue_index];
  JumpEntry j;
  j.index = glue_index;
  j.xi_star = g.xi_star;
  j.w_star = g.w_star;
  j.kind = g.kind;
  j.admissible = g.verdict.admissible;
  j.reason = g.verdict.reason;
  const double s = p.s, w = g.w_star;
  const bool bounded = g.left_slope.is_finite() && g.right_slope.is_finite();
  if (bounded) {
    j.values["slope_left"] = g.left_slope.value;
    j.values["slope_right"] = g.right_slope.value;
    j.values["slope_difference"] = g.left_slope.value - g.right_slope.value;
  }
  if (p.equation == Equation::Nvw) {
    const CoefValue c = p.coefficient->eval(w);
    const double d = c.c * c.c - s * s;
    const double kl = std::get<NvwConstants>(g.left_constants).k;
    const double kr = std::get<NvwConstants>(g.right_constants).k;
    const double fac = std::sqrt(std::abs(d));
    // sign((c² - s²)·w_ξ) with sign(c² - s²) = -sign(k) on a monotone side.
    const double tl = -((kl > 0) - (kl < 0)) * g.left_slope.sign() * std::sqrt(std::abs(kl));
    const double tr = -((kr > 0) - (kr < 0)) * g.right_slope.sign() * std::sqrt(std::abs(kr));
    j.values["c2_minus_s2"] = d;
    j.values["cprime"] = c.cp;
    j.values["sqrt_factor_left"] = fac;
    j.values["sqrt_factor_right"] = fac;
    j.values["left_term"] = tl;
    j.values["right_term"] = tr;
    j.values["res2"] = (tl - tr) * fac;
    if (bounded) j.values["res1"] = d * (g.left_slope.value - g.right_slope.value);
  } else {
    const auto L = std::get<ChConstants>(g.left_constants);
    const auto R = std::get<ChConstants>(g.right_constants);
    j.values["a_left"] = L.a;
    j.values["a_right"] = R.a;
    j.values["a_difference"] = L.a - R.a;
    j.values["b_left"] = L.b;
    j.values["b_right"] = R.b;
    j.values["w_minus_s"] = w - s;
    if (bounded) {
      j.values["res1"] = (w - s) * (g.left_slope.value - g.right_slope.value);
      j.values["slope_sum"] = g.left_slope.value + g.right_slope.value;
      j.values["peak_condition"] = 2.0 * L.a * s + L.b;
    } else {
      const double gl = ch::g_value(s, L.a, L.b, w), gr = ch::g_value(s, R.a, R.b, w);
      const double tl = g.left_slope.sign() * std::sqrt(std::abs((w - s) * gl));
      const double tr = g.right_slope.sign() * std::sqrt(std::abs((w - s) * gr));
      j.values["left_term"] = tl;
      j.values["right_term"] = tr;
      j.values["res2"] = tl - tr;
    }
  }
  return j;
}

namespace {

std::vector<double> classical_grid(const Segment& seg, int n) {
  const double lo = seg.w_tab_lo(), hi = seg.w_tab_hi();
  const double margin = 1e-3 * (hi - lo);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = lo + margin + (hi - lo - 2 * margin) * (i + 0.5) / n;
  return w;
}

}  // namespace

double classical_residual_nvw(const Segment& seg, const CoefficientSpec& spec, double s, int n_points) {
  if (seg.kind() != SegmentKind::Monotone) return 0.0;
  double worst = 0.0;
  for (double w : classical_grid(seg, n_points)) {
    const double xp = seg.dxi_dw(w), xpp = seg.d2xi_dw2(w);
    const double wx = 1.0 / xp, wxx = -xpp / (xp * xp * xp);
    const CoefValue c = spec.eval(w);
    const double t1 = (s * s - c.c * c.c) * wxx, t2 = c.c * c.cp * wx * wx;
    const double scale = std::abs(t1) + std::abs(t2);
    if (scale > 0.0) worst = std::max(worst, std::abs(t1 - t2) / scale);
  }
  return worst;
}

double classical_residual_ch(const Segment& seg, double s, int n_points) {
  const auto [a, b] = std::get<ChConstants>(seg.constants());
  (void)b;
  auto form = [&](double w, double wx, double wxx) {
    return -s * w + s * wxx + 1.5 * w * w - 0.5 * wx * wx - w * wxx - a;
  };
  switch (seg.kind()) {
    case SegmentKind::Constant: {
      const double w = seg.wbar();
      return std::abs(a - 1.5 * w * w + s * w);
    }
    case SegmentKind::ExpPeak: {
      const double lo = std::isfinite(seg.xi_lo()) ? seg.xi_lo() : seg.xi_hi() - 20.0;
      const double hi = std::isfinite(seg.xi_hi()) ? seg.xi_hi() : seg.xi_lo() + 20.0;
      double worst = 0.0;
      for (int i = 0; i < n_points; ++i) {
        const double xi = lo + (hi - lo) * (i + 0.5) / n_points;
        const double w = seg.w_at(xi), wx = seg.w_xi_finite(xi);
        worst = std::max(worst, std::abs(form(w, wx, w)));
      }
      return worst;
    }
    case SegmentKind::Monotone: break;
  }
  double worst = 0.0;
  for (double w : classical_grid(seg, n_points)) {
    const double xp = seg.dxi_dw(w), xpp = seg.d2xi_dw2(w);
    const double wx = 1.0 / xp, wxx = -xpp / (xp * xp * xp);
    const double scale = std::abs(s * w) + std::abs(s * wxx) + 1.5 * w * w + 0.5 * wx * wx +
                         std::abs(w * wxx) + std::abs(a);
    if (scale > 0.0) worst = std::max(worst, std::abs(form(w, wx, wxx)) / scale);
  }
  return worst;
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<BumpTestFunction> place_bumps(const Profile& p, const SuiteOptions& opt) {
  if (opt.n_bumps < 0) throw Error(ErrorCode::InvalidInput, "n_bumps must be non-negative");
  const double L = p.xi_lo(), H = p.xi_hi();
  BumpTestFunction proto;
  proto.s = p.s;
  proto.t_lo = opt.t_lo;
  proto.t_hi = opt.t_hi;
  proto.d_x = opt.d_x;
  proto.validate();

  std::vector<BumpTestFunction> out;
  const std::size_t nb = p.breakpoints.size();
  const int n_glue = (opt.placement == Placement::SeededRandom && nb > 0) ? opt.n_bumps / 2 : 0;
  for (int k = 0; k < n_glue; ++k) {
    BumpTestFunction b = proto;
    b.gamma0 = p.breakpoints[k % nb].xi_star;
    const double room = std::min(b.gamma0 - L, H - b.gamma0);
    b.d_x = std::min(opt.d_x, 0.999 * room);
    out.push_back(b);
  }
  double lo_w = nb > 0 ? p.breakpoints.front().xi_star - 4.0 : -4.0;
  double hi_w = nb > 0 ? p.breakpoints.back().xi_star + 4.0 : 4.0;
  double d = opt.d_x;
  if (std::isfinite(H - L) && H - L <= 2.0 * d) d = 0.45 * (H - L);
  lo_w = std::max(lo_w, L + d);
  hi_w = std::min(hi_w, H - d);
  if (!(lo_w <= hi_w)) {
    lo_w = std::isfinite(L) ? L + d : H - 2 * d;
    hi_w = std::isfinite(H) ? H - d : L + 2 * d;
    if (!(lo_w <= hi_w)) hi_w = lo_w;
  }
  std::mt19937_64 rng(opt.seed);
  const int n_rest = opt.n_bumps - n_glue;
  for (int k = 0; k < n_rest; ++k) {
    BumpTestFunction b = proto;
    b.d_x = d;
    if (opt.placement == Placement::Grid)
      b.gamma0 = lo_w + (hi_w - lo_w) * (k + 0.5) / n_rest;
    else
      b.gamma0 = lo_w + (hi_w - lo_w) * uniform01(rng);
    out.push_back(b);
  }
  return out;
}

ResidualReport residual_suite(const Profile& p, const SuiteOptions& opt, const Tolerances& tol) {
  ResidualReport rep;
  for (const BumpTestFunction& b : place_bumps(p, opt)) {
    rep.entries.push_back(residual(p, b, tol));
    rep.total_cells += rep.entries.back().cells;
    rep.total_quad_error = std::max(rep.total_quad_error, rep.entries.back().quad_error);
  }
  std::vector<double> v;
  for (const auto& e : rep.entries) v.push_back(e.normalized);
  if (!v.empty()) {
    rep.max_normalized = *std::max_element(v.begin(), v.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    rep.median_normalized = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  }
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    rep.jumps.push_back(jump_report(p, i));
    rep.all_junctions_admissible = rep.all_junctions_admissible && rep.jumps.back().admissible;
  }
  return rep;
}

}  // namespace weakwave::verify
