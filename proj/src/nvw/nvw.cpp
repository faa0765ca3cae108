#include "weakwave/nvw.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "weakwave/error.hpp"
#include "weakwave/quadrature.hpp"
#include "weakwave/roots.hpp"

namespace weakwave::nvw {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::OutsideBand: return "OutsideBand";
    case Regime::InteriorBand: return "InteriorBand";
    case Regime::BoundaryBand: return "BoundaryBand";
  }
  return "Unknown";
}

SpeedRegime speed_regime(const CoefficientSpec& spec, double s, const Tolerances& tol) {
  SpeedRegime r{Regime::InteriorBand, s, spec.alpha(), spec.beta()};
  const double as = std::abs(s);
  const double slack = tol.root_tol * (1.0 + as);
  if (std::abs(as - spec.alpha()) <= slack || std::abs(as - spec.beta()) <= slack)
    r.regime = Regime::BoundaryBand;
  else if (as < spec.alpha() || as > spec.beta())
    r.regime = Regime::OutsideBand;
  return r;
}

std::vector<GlueCandidate> glue_candidates(const CoefficientSpec& spec, double s, double u_lo,
                                           double u_hi, int scan_points, const Tolerances& tol) {
  if (!(u_lo < u_hi) || scan_points < 1) throw Error(ErrorCode::InvalidInput, "bad scan range");
  auto f = [&](double u) {
    const double c = spec.eval(u).c;
    return c * c - s * s;
  };
  const double flat = tol.root_tol * (1.0 + s * s);
  bool all_flat = true;
  for (int i = 0; i <= scan_points && all_flat; ++i)
    all_flat = std::abs(f(u_lo + (u_hi - u_lo) * i / scan_points)) <= flat;
  if (all_flat) throw Error(ErrorCode::DegenerateEverywhere, "c(u) = |s| on the whole scan range");

  std::vector<GlueCandidate> out;
  for (const auto& br : roots::scan_sign_changes(f, u_lo, u_hi, scan_points)) {
    const double u = br.lo == br.hi ? br.lo : roots::bisect(f, br.lo, br.hi, tol.root_tol);
    if (!out.empty() && std::abs(out.back().u_star - u) <= 10.0 * tol.root_tol) continue;
    const double cp = spec.eval(u).cp;
    out.push_back({u, cp, std::abs(cp) < tol.degenerate_cprime_tol});
  }
  // Endpoint roots and touching roots do not show up as sign changes.
  const double h = (u_hi - u_lo) / scan_points;
  std::vector<double> extra;
  if (std::abs(f(u_lo)) <= flat) extra.push_back(u_lo);
  if (std::abs(f(u_hi)) <= flat) extra.push_back(u_hi);
  auto af = [&](double u) { return std::abs(f(u)); };
  for (int i = 1; i < scan_points; ++i) {
    const double u = u_lo + h * i;
    const double fm = f(u - h), f0 = f(u), fp = f(u + h);
    if ((fm < 0) != (fp < 0) || fm == 0.0 || fp == 0.0) continue;
    if (!(std::abs(f0) <= std::abs(fm) && std::abs(f0) < std::abs(fp))) continue;
    const double m = roots::golden_min(af, u - h, u + h, tol.root_tol);
    if (af(m) <= flat) extra.push_back(m);
  }
  for (double u : extra) {
    bool dup = false;
    for (const auto& c : out) dup = dup || std::abs(c.u_star - u) <= 2.0 * h;
    if (dup) continue;
    const double cp = spec.eval(u).cp;
    out.push_back({u, cp, std::abs(cp) < tol.degenerate_cprime_tol});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.u_star < y.u_star; });
  if (out.empty()) throw Error(ErrorCode::NoCandidates, "no root of c(u) = |s|; only unbounded waves exist");
  return out;
}

namespace {

bool is_root(const CoefficientSpec& spec, double s, double w, const Tolerances& tol) {
  const double c = spec.eval(w).c;
  return std::abs(c * c - s * s) <= tol.glue_value_tol * (1.0 + s * s);
}

EndSpec root_end(const CoefficientSpec& spec, double w_star, double dir, double k_abs) {
  const CoefValue v = spec.eval(w_star);
  const double d1 = 2.0 * v.c * v.cp;
  const double d2 = 2.0 * (v.cp * v.cp + v.c * v.cpp);
  const bool spline = spec.family() == Family::TabulatedSpline;
  EndSpec e;
  e.anchor = w_star;
  e.p = 0.5;
  e.reduced = [&spec, w_star, dir, d1, d2, k_abs, spline](double w, double off) {
    double ratio;
    if (off == 0.0 || (spline && off < 1e-6))
      ratio = std::abs(d1 + 0.5 * d2 * dir * off);
    else
      ratio = std::abs(spec.c2_diff(w, w_star)) / off;
    return std::sqrt(ratio) / std::sqrt(k_abs);
  };
  return e;
}

EndSpec regular_end(const CoefficientSpec& spec, double s, double w_end, double k_abs) {
  EndSpec e;
  e.anchor = w_end;
  e.p = 0.0;
  e.reduced = [&spec, s, k_abs](double w, double) {
    const double c = spec.eval(w).c;
    return std::sqrt(std::abs(s * s - c * c)) / std::sqrt(k_abs);
  };
  return e;
}

}  // namespace

Segment segment_between(const CoefficientSpec& spec, double s, double k, double w_a, double w_b,
                        Orientation orientation, const Tolerances& tol) {
  if (!std::isfinite(k) || k == 0.0) throw Error(ErrorCode::InvalidInput, "k must be finite and nonzero");
  if (!std::isfinite(w_a) || !std::isfinite(w_b) || w_a == w_b)
    throw Error(ErrorCode::InvalidInput, "segment endpoints must be finite and distinct");
  if ((w_b > w_a) != (orientation == Orientation::Increasing))
    throw Error(ErrorCode::InvalidInput, "orientation disagrees with the endpoint order");
  if (speed_regime(spec, s, tol).regime == Regime::BoundaryBand)
    throw Error(ErrorCode::InvalidInput, "boundary speeds |s| = alpha, beta are rejected");

  const double lo = std::min(w_a, w_b), hi = std::max(w_a, w_b);
  const int n = 2000;
  int sign = 0;
  const double flat = tol.glue_value_tol * (1.0 + s * s);
  for (int i = 1; i <= n; ++i) {
    const double w = lo + (hi - lo) * i / (n + 1);
    const double c = spec.eval(w).c;
    const double f = s * s - c * c;
    const int sg = f > flat ? 1 : (f < -flat ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign))
      throw Error(ErrorCode::SignViolation, "s^2 - c^2(w) changes sign or vanishes inside the segment");
    sign = sg;
  }
  const double k_abs = std::abs(k);
  auto end_spec = [&](double w, double dir) {
    if (!is_root(spec, s, w, tol)) return regular_end(spec, s, w, k_abs);
    if (std::abs(spec.eval(w).cp) < tol.degenerate_cprime_tol)
      throw Error(ErrorCode::DegenerateEndpoint, "endpoint root has c'(w) = 0");
    return root_end(spec, w, dir, k_abs);
  };
  return Segment::monotone(end_spec(lo, 1.0), end_spec(hi, -1.0), orientation,
                           NvwConstants{sign * k_abs}, tol);
}

GlueSide side_of(const Segment& seg, bool junction_at_right_end) {
  GlueSide g;
  g.constant = seg.kind() == SegmentKind::Constant;
  if (!g.constant) g.k = std::get<NvwConstants>(seg.constants()).k;
  g.w = junction_at_right_end ? seg.w_right_end() : seg.w_left_end();
  g.slope = junction_at_right_end ? seg.slope_right_end() : seg.slope_left_end();
  return g;
}

namespace {

GlueKind kind_from_sides(const GlueSide& l, const GlueSide& r) {
  if (l.constant && r.constant) return GlueKind::SmoothC1;
  if (l.constant || r.constant) return GlueKind::ConstantJunction;
  if (!l.slope.is_finite() || !r.slope.is_finite())
    return l.slope.sign() == r.slope.sign() ? GlueKind::InflectionSingular : GlueKind::Cusp;
  return GlueKind::SmoothC1;
}

}  // namespace

GlueVerdict check_glue_nvw(const GlueSide& left, const GlueSide& right, double w_star,
                           const CoefficientSpec& spec, double s, const Tolerances& tol) {
  GlueVerdict v;
  v.kind = kind_from_sides(left, right);
  auto reject = [&](const char* reason) {
    v.admissible = false;
    v.reason = reason;
    return v;
  };
  if (std::abs(left.w - right.w) > tol.glue_value_tol) return reject("ValueMismatch");
  const CoefValue cv = spec.eval(w_star);
  if (std::abs(cv.c * cv.c - s * s) <= tol.glue_value_tol * (1.0 + s * s)) {
    if (std::abs(cv.cp) < tol.degenerate_cprime_tol) return reject("DegenerateSingularPoint");
    return v;
  }
  if (left.constant && right.constant) return v;
  if (left.constant || right.constant) return reject("SlopeMismatch");
  if (left.slope.sign() != right.slope.sign()) return reject("OppositeSlopes");
  if (std::abs(std::abs(left.k) - std::abs(right.k)) > 1e-9 * (1.0 + std::abs(left.k)))
    return reject("KMismatch");
  return v;
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw Error(ErrorCode::InvalidInput, std::string("unknown key in ") + where + ": " + it.key());
  }
}

double num(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorCode::InvalidInput, std::string("missing numeric field: ") + key);
  return j.at(key).get<double>();
}

Orientation dir_of(const nlohmann::json& j) {
  if (!j.contains("dir") || !j.at("dir").is_string())
    throw Error(ErrorCode::InvalidInput, "missing field: dir");
  const std::string d = j.at("dir").get<std::string>();
  if (d == "inc") return Orientation::Increasing;
  if (d == "dec") return Orientation::Decreasing;
  throw Error(ErrorCode::InvalidInput, "dir must be inc or dec");
}

}  // namespace

Plan plan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "plan must be an object");
  reject_unknown(j, {"pieces", "xi0"}, "plan");
  if (!j.contains("pieces") || !j.at("pieces").is_array())
    throw Error(ErrorCode::InvalidInput, "plan.pieces must be an array");
  Plan p;
  if (j.contains("xi0")) p.xi0 = num(j, "xi0");
  for (const auto& pj : j.at("pieces")) {
    if (!pj.is_object() || !pj.contains("type") || !pj.at("type").is_string())
      throw Error(ErrorCode::InvalidInput, "plan piece needs a type");
    const std::string type = pj.at("type").get<std::string>();
    Piece piece;
    if (type == "const") {
      reject_unknown(pj, {"type", "w", "length"}, "const piece");
      piece.constant = true;
      piece.w = num(pj, "w");
      if (pj.contains("length")) piece.length = num(pj, "length");
    } else if (type == "mono") {
      reject_unknown(pj, {"type", "k", "dir", "from", "to"}, "mono piece");
      piece.k = num(pj, "k");
      piece.dir = dir_of(pj);
      piece.from = num(pj, "from");
      piece.to = num(pj, "to");
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown piece type: " + type);
    }
    p.pieces.push_back(piece);
  }
  return p;
}

nlohmann::json plan_to_json(const Plan& p) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const Piece& q : p.pieces) {
    if (q.constant) {
      nlohmann::json c = {{"type", "const"}, {"w", q.w}};
      if (q.length) c["length"] = *q.length;
      pieces.push_back(c);
    } else {
      pieces.push_back({{"type", "mono"}, {"k", q.k}, {"dir", to_string(q.dir)}, {"from", q.from}, {"to", q.to}});
    }
  }
  return {{"pieces", pieces}, {"xi0", p.xi0}};
}

namespace {

double start_value(const Piece& p) { return p.constant ? p.w : p.from; }
double end_value(const Piece& p) { return p.constant ? p.w : p.to; }

}  // namespace

Profile assemble_nvw(const CoefficientSpec& spec, double s, const Plan& plan, const Tolerances& tol,
                     bool checked) {
  tol.validate();
  if (plan.pieces.empty()) throw Error(ErrorCode::InvalidInput, "empty plan");
  if (speed_regime(spec, s, tol).regime == Regime::BoundaryBand)
    throw Error(ErrorCode::InvalidInput, "boundary speeds |s| = alpha, beta are rejected");
  const std::size_t n = plan.pieces.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(end_value(plan.pieces[i]) - start_value(plan.pieces[i + 1])) > tol.glue_value_tol)
      throw Error(ErrorCode::InadmissiblePlan,
                  "junction " + std::to_string(i) + ": ValueMismatch", i);

  std::map<std::tuple<double, double, double, int>, Segment> cache;
  std::vector<Segment> segs;
  double cursor = plan.xi0;
  for (std::size_t i = 0; i < n; ++i) {
    const Piece& p = plan.pieces[i];
    const bool first = i == 0, last = i + 1 == n;
    Segment seg;
    if (p.constant) {
      const NvwConstants zero{0.0};
      if (p.length && !(*p.length > 0.0)) throw Error(ErrorCode::InvalidInput, "constant length must be positive");
      if (n == 1) {
        seg = p.length ? Segment::constant(p.w, zero, plan.xi0, plan.xi0 + *p.length)
                       : Segment::constant(p.w, zero, -Segment::kInf, Segment::kInf);
      } else if (first) {
        seg = Segment::constant(p.w, zero, p.length ? plan.xi0 - *p.length : -Segment::kInf, plan.xi0);
      } else if (last || p.length) {
        seg = Segment::constant(p.w, zero, cursor, p.length ? cursor + *p.length : Segment::kInf);
      } else {
        throw Error(ErrorCode::InvalidInput, "interior constant piece needs a length");
      }
    } else {
      const auto key = std::make_tuple(p.k, p.from, p.to, static_cast<int>(p.dir));
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, segment_between(spec, s, p.k, p.from, p.to, p.dir, tol)).first;
      seg = it->second;
      if (first && n > 1) seg.place_right_at(plan.xi0);
      else seg.place_left_at(cursor);
    }
    cursor = seg.xi_hi();
    segs.push_back(std::move(seg));
  }

  Profile prof;
  prof.equation = Equation::Nvw;
  prof.s = s;
  prof.coefficient = spec;
  prof.tol = tol;
  prof.plan = plan_to_json(plan);
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    GluePoint g = make_glue_point(segs, i);
    g.verdict = check_glue_nvw(side_of(segs[i], true), side_of(segs[i + 1], false), g.w_star, spec, s, tol);
    g.kind = g.verdict.kind;
    if (checked && !g.verdict.admissible)
      throw Error(ErrorCode::InadmissiblePlan, "junction " + std::to_string(i) + ": " + g.verdict.reason, i);
    prof.breakpoints.push_back(g);
  }
  prof.segments = std::move(segs);
  return prof;
}

double wxi_l2(const Segment& seg, const CoefficientSpec& spec, double s, double w1, double w2,
              const Tolerances& tol) {
  if (seg.kind() == SegmentKind::Constant) return 0.0;
  if (seg.kind() != SegmentKind::Monotone) throw Error(ErrorCode::InvalidInput, "wxi_l2 needs a NVW segment");
  const double k_abs = std::abs(std::get<NvwConstants>(seg.constants()).k);
  const double lo = std::max(std::min(w1, w2), seg.w_lo());
  const double hi = std::min(std::max(w1, w2), seg.w_hi());
  if (!(lo < hi)) return 0.0;

  double total = 0.0;
  auto direct = [&](double a, double b) {
    if (!(a < b)) return;
    auto f = [&](double w) {
      const double c = spec.eval(w).c;
      return std::sqrt(k_abs) / std::sqrt(std::abs(s * s - c * c));
    };
    const auto r = quad::integrate(f, a, b, tol.quad_abs_tol);
    if (!r.converged) throw Error(ErrorCode::QuadratureFailure, "wxi_l2 quadrature did not converge");
    total += r.value;
  };
  // w = w* + dir·t² removes the inverse square root at a root endpoint.
  auto substituted = [&](double w_star, double dir, double w_far) {
    if (std::abs(spec.eval(w_star).cp) < tol.degenerate_cprime_tol)
      throw Error(ErrorCode::DivergentIntegral, "degenerate root: w_xi is not square integrable");
    auto f = [&](double t) {
      const double w = w_star + dir * t * t;
      return 2.0 * t * std::sqrt(k_abs) / std::sqrt(std::abs(spec.c2_diff(w, w_star)));
    };
    const auto r = quad::integrate(f, 0.0, std::sqrt(std::abs(w_far - w_star)), tol.quad_abs_tol);
    if (!r.converged) throw Error(ErrorCode::QuadratureFailure, "wxi_l2 quadrature did not converge");
    total += r.value;
  };
  const double mid = seg.w_mid();
  const bool lo_sing = seg.endpoint_lo().flag == EndpointFlag::SingularDerivative;
  const bool hi_sing = seg.endpoint_hi().flag == EndpointFlag::SingularDerivative;
  // Lower half.
  if (lo < mid) {
    const double b = std::min(hi, mid);
    if (lo_sing && lo == seg.w_lo()) substituted(lo, 1.0, b);
    else direct(lo, b);
  }
  if (hi > mid) {
    const double a = std::max(lo, mid);
    if (hi_sing && hi == seg.w_hi()) substituted(hi, -1.0, a);
    else direct(a, hi);
  }
  return total;
}

std::vector<double> default_holder_grid() {
  std::vector<double> h;
  for (int e = 5; e <= 15; ++e) h.push_back(std::ldexp(1.0, -e));
  return h;
}

double holder_exponent(const Profile& p, double xi_star, const std::vector<double>& h_grid) {
  const double w0 = profile_eval(p, xi_star).w;
  std::vector<double> xs, ys;
  for (double h : h_grid) {
    double m = 0.0;
    if (xi_star - h >= p.xi_lo()) m = std::max(m, std::abs(profile_eval(p, xi_star - h).w - w0));
    if (xi_star + h <= p.xi_hi()) m = std::max(m, std::abs(profile_eval(p, xi_star + h).w - w0));
    if (m > 0.0) {
      xs.push_back(std::log(h));
      ys.push_back(std::log(m));
    }
  }
  if (xs.size() < 2) return std::nan("");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace weakwave::nvw
