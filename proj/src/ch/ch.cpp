#include "weakwave/ch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "weakwave/error.hpp"

namespace weakwave::ch {

const char* to_string(Kind k) {
  switch (k) {
    case Kind::NoBoundedWave: return "NoBoundedWave";
    case Kind::CusponWithDecay: return "CusponWithDecay";
    case Kind::PeakonWithDecay: return "PeakonWithDecay";
    case Kind::PeriodicCuspon: return "PeriodicCuspon";
    case Kind::PeriodicPeakon: return "PeriodicPeakon";
    case Kind::StumponCompatible: return "StumponCompatible";
    case Kind::MirrorCase: return "MirrorCase";
    case Kind::UnclassifiedBoundedDerivative: return "UnclassifiedBoundedDerivative";
  }
  return "Unknown";
}

bool constructible(Kind k) {
  return k != Kind::NoBoundedWave && k != Kind::UnclassifiedBoundedDerivative;
}

namespace {

bool same(double x, double y, double scale) { return std::abs(x - y) <= 1e-8 * (1.0 + scale); }

struct Core {
  Kind kind = Kind::NoBoundedWave;
  Kind inner = Kind::NoBoundedWave;
  double base = 0.0, eta = 0.0;
  std::vector<double> etas;
};

// Decision table for s >= 0.
Core classify_nonnegative(const CubicAnalysis& an) {
  Core c;
  const double s = an.s;
  if (!an.crit_exists) return c;
  int total = 0;
  for (const Zero& z : an.zeros) total += z.multiplicity;
  if (an.zeros.size() == 1 && total < 3) return c;
  if (an.zeros.size() == 1) return c;  // triple zero
  if (an.zeros.size() == 2) {
    const Zero& d = an.zeros[0].multiplicity == 2 ? an.zeros[0] : an.zeros[1];
    const Zero& e = an.zeros[0].multiplicity == 2 ? an.zeros[1] : an.zeros[0];
    c.base = d.value;
    c.eta = e.value;
    const bool at_min = std::abs(d.value - an.w_min) <= std::abs(d.value - an.w_max);
    if (at_min) {
      if (same(s, e.value, std::abs(s))) c.kind = Kind::PeakonWithDecay;
      else if (s > d.value && s < e.value) c.kind = Kind::CusponWithDecay;
      else if (s > e.value) c.kind = Kind::UnclassifiedBoundedDerivative;
      c.inner = c.kind;
    } else {
      if (same(s, e.value, std::abs(s))) c.inner = Kind::PeakonWithDecay;
      else if (s > e.value && s < d.value) c.inner = Kind::CusponWithDecay;
      else if (s < e.value) c.kind = c.inner = Kind::UnclassifiedBoundedDerivative;
      if (c.inner == Kind::PeakonWithDecay || c.inner == Kind::CusponWithDecay) c.kind = Kind::MirrorCase;
    }
    return c;
  }
  const double e1 = an.zeros[0].value, e2 = an.zeros[1].value, e3 = an.zeros[2].value;
  c.etas = {e1, e2, e3};
  if (same(s, e3, std::abs(s))) c.kind = Kind::PeriodicPeakon;
  else if (same(s, e2, std::abs(s))) c.kind = Kind::NoBoundedWave;
  else if (s > e2 && s < e3) c.kind = Kind::PeriodicCuspon;
  else c.kind = Kind::UnclassifiedBoundedDerivative;
  c.inner = c.kind;
  return c;
}

void certify(Taxonomy& t) {
  const CubicAnalysis& an = t.analysis;
  const double s = an.s, a = an.a, b = an.b;
  const double tol = 1e-8 * (1.0 + std::abs(s) + std::abs(a) + std::abs(b));
  auto put = [&](const std::string& name, double residual) {
    t.certificates[name] = {residual, residual <= tol};
  };
  std::vector<double> z;
  for (const Zero& zz : an.zeros)
    for (int m = 0; m < zz.multiplicity; ++m) z.push_back(zz.value);
  double gmax = 0.0;
  for (double v : z) gmax = std::max(gmax, std::abs(g_value(s, a, b, v)));
  t.certificates["g_at_zeros"] = {gmax, gmax <= 1e-9 * (1.0 + std::abs(b))};
  if (z.size() == 3) {
    put("vieta_sum", std::abs(z[0] + z[1] + z[2] - s));
    put("vieta_pairs", std::abs(z[0] * z[1] + z[0] * z[2] + z[1] * z[2] + 2.0 * a));
    put("vieta_product", std::abs(z[0] * z[1] * z[2] - b));
  } else if (an.has_complex_pair) {
    put("vieta_sum", std::abs(z[0] - an.quad_p1 - s));
    put("vieta_product", std::abs(-z[0] * an.quad_p0 - b));
  }
  for (const Zero& zz : an.zeros)
    if (zz.multiplicity == 2) {
      const double gp = std::abs(g_prime(s, a, zz.value));
      t.certificates["double_zero_g_prime"] = {gp, gp <= 1e-7};
    }
  const Kind k = t.inner_kind;
  if (k == Kind::CusponWithDecay || k == Kind::PeakonWithDecay) {
    const double wm = t.w_min, eta = t.eta;
    put("eta_plus_2wmin_eq_s", std::abs(eta + 2.0 * wm - s));
    put("pair_relation", std::abs(-2.0 * eta * wm - wm * wm - 2.0 * a));
    put("product_relation", std::abs(eta * wm * wm - b));
    if (k == Kind::PeakonWithDecay) put("s_eq_eta", std::abs(s - eta));
  }
  if (k == Kind::PeriodicPeakon) put("s_eq_eta3", std::abs(s - t.etas.back()));
  if (t.stumpon_compatible) {
    put("stumpon_2a_eq_s2", std::abs(2.0 * a - s * s));
    put("stumpon_b_eq_minus_s3", std::abs(b + s * s * s));
  }
}

}  // namespace

Taxonomy classify_ch(double s, double a, double b) {
  Taxonomy t;
  t.analysis = analyze_g(s, a, b);
  t.reflected = s < 0.0;
  Core c;
  if (t.reflected) {
    c = classify_nonnegative(analyze_g(-s, a, -b));
    c.base = -c.base;
    c.eta = -c.eta;
    for (double& e : c.etas) e = -e;
    std::reverse(c.etas.begin(), c.etas.end());
  } else {
    c = classify_nonnegative(t.analysis);
  }
  t.kind = c.kind;
  t.inner_kind = c.inner;
  t.w_min = c.base;
  t.eta = c.eta;
  t.etas = c.etas;
  t.stumpon_compatible = std::abs(2.0 * a - s * s) <= 1e-10 * (1.0 + s * s) &&
                         std::abs(b + s * s * s) <= 1e-10 * (1.0 + std::abs(s * s * s));
  if (t.stumpon_compatible) {
    if (t.kind != Kind::MirrorCase) t.inner_kind = t.kind;
    t.kind = Kind::StumponCompatible;
  }
  certify(t);
  return t;
}

Segment mono_segment(double s, double a, double b, double w_from, double w_to, Orientation dir,
                     const Tolerances& tol) {
  if (!std::isfinite(w_from) || !std::isfinite(w_to) || w_from == w_to)
    throw Error(ErrorCode::InvalidInput, "mono piece endpoints must be finite and distinct");
  if ((w_to > w_from) != (dir == Orientation::Increasing))
    throw Error(ErrorCode::InvalidInput, "orientation disagrees with the endpoint order");
  const CubicAnalysis an = analyze_g(s, a, b);

  struct Factor {
    double z;
    int m;
  };
  std::vector<Factor> zeros;
  for (const Zero& z : an.zeros) zeros.push_back({z.value, z.multiplicity});
  // s coinciding with a zero cancels one power against (s - w).
  bool cancel = false;
  for (Factor& f : zeros)
    if (!cancel && std::abs(f.z - s) <= 1e-8 * (1.0 + std::abs(s))) {
      --f.m;
      cancel = true;
    }
  zeros.erase(std::remove_if(zeros.begin(), zeros.end(), [](const Factor& f) { return f.m == 0; }),
              zeros.end());

  const double lo = std::min(w_from, w_to), hi = std::max(w_from, w_to);
  auto near = [&](double x, double y) { return std::abs(x - y) <= tol.glue_value_tol * (1.0 + std::abs(x)); };

  // Interior must avoid s and every zero.
  if (!cancel && s > lo && s < hi && !near(s, lo) && !near(s, hi))
    throw Error(ErrorCode::SignViolation, "w = s lies inside the piece");
  for (const Factor& f : zeros)
    if (f.z > lo && f.z < hi && !near(f.z, lo) && !near(f.z, hi))
      throw Error(ErrorCode::SignViolation, "a zero of g lies inside the piece");
  for (int i = 1; i <= 200; ++i) {
    const double w = lo + (hi - lo) * i / 201.0;
    const double ratio = (s - w) / g_value(s, a, b, w);
    if (!(ratio > 0.0)) throw Error(ErrorCode::SignViolation, "w_xi^2 = (g)/(s - w) is negative inside the piece");
  }

  auto end_spec = [&](double e) {
    EndSpec spec;
    spec.anchor = e;
    const bool at_s = !cancel && near(e, s);
    int anchored = -1;
    for (std::size_t i = 0; i < zeros.size(); ++i)
      if (near(e, zeros[i].z)) anchored = static_cast<int>(i);
    if (at_s) spec.anchor = s;
    if (anchored >= 0) spec.anchor = zeros[anchored].z;
    spec.p = 0.5 * (at_s ? 1 : 0) - 0.5 * (anchored >= 0 ? zeros[anchored].m : 0);
    if (spec.p != 0.5 && spec.p != 0.0 && spec.p != -0.5 && spec.p != -1.0)
      throw Error(ErrorCode::NotConstructible, "unsupported endpoint structure");
    const bool complex_pair = an.has_complex_pair;
    const double p1 = an.quad_p1, p0 = an.quad_p0;
    spec.reduced = [zeros, anchored, at_s, cancel, s, complex_pair, p1, p0](double w, double) {
      double val = 1.0;
      if (!cancel && !at_s) val *= std::abs(s - w);
      for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (static_cast<int>(i) == anchored) continue;
        val /= std::pow(std::abs(w - zeros[i].z), zeros[i].m);
      }
      if (complex_pair) val /= std::abs((w + p1) * w + p0);
      return std::sqrt(val);
    };
    return spec;
  };
  EndSpec elo = end_spec(lo), ehi = end_spec(hi);
  return Segment::monotone(elo, ehi, dir, ChConstants{a, b}, tol);
}

ExpPeakPair build_exp_peak(double s, double a, double gamma0, double x_lo, double x_hi) {
  if (s * s < 2.0 * a) throw Error(ErrorCode::ComplexSlope, "s^2 < 2a: the slope at w = s is complex");
  if (!(x_lo < 0.0 && x_hi > 0.0)) throw Error(ErrorCode::InvalidInput, "exp peak needs x_lo < 0 < x_hi");
  const double as = std::abs(s);
  const double root = std::sqrt(std::max(0.0, s * s - 2.0 * a));
  double c1 = 0.5 * (as + root), c2 = 0.5 * (as - root);
  if (s < 0.0) {
    c1 = -c1;
    c2 = -c2;
  }
  const ChConstants k{a, -2.0 * a * s};
  return {Segment::exp_peak(c1, c2, 1, gamma0, x_lo, 0.0, k),
          Segment::exp_peak(c1, c2, -1, gamma0, 0.0, x_hi, k), c1, c2};
}

GlueSide side_of(const Segment& seg, bool junction_at_right_end) {
  GlueSide g;
  g.constant = seg.kind() == SegmentKind::Constant;
  const auto c = std::get<ChConstants>(seg.constants());
  g.a = c.a;
  g.b = c.b;
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
  if (l.slope.sign() != 0 && l.slope.sign() == -r.slope.sign()) return GlueKind::Peak;
  return GlueKind::SmoothC1;
}

bool constant_consistent(const GlueSide& c, double s) {
  const double w = c.w;
  const double a_nat = 1.5 * w * w - s * w;
  const double b_nat = w * w * w - s * w * w - 2.0 * c.a * w;
  return std::abs(c.a - a_nat) <= 1e-9 * (1.0 + std::abs(a_nat)) &&
         std::abs(c.b - b_nat) <= 1e-9 * (1.0 + std::abs(b_nat));
}

}  // namespace

GlueVerdict check_glue_ch(const GlueSide& left, const GlueSide& right, double s, const Tolerances& tol) {
  GlueVerdict v;
  v.kind = kind_from_sides(left, right);
  auto reject = [&](const char* reason) {
    v.admissible = false;
    v.reason = reason;
    return v;
  };
  if (std::abs(left.w - right.w) > tol.glue_value_tol) return reject("ValueMismatch");
  if (std::abs(left.a - right.a) > 1e-9) return reject("AMismatch");
  const double w = 0.5 * (left.w + right.w);
  const bool at_s = std::abs(w - s) <= tol.glue_value_tol * (1.0 + std::abs(s));
  const double a = left.a;

  if (left.constant || right.constant) {
    if (left.constant && right.constant) {
      if (!constant_consistent(left, s) || !constant_consistent(right, s)) return reject("ConstantNotStationary");
      return v;
    }
    const GlueSide& c = left.constant ? left : right;
    const GlueSide& m = left.constant ? right : left;
    if (at_s) {
      if (std::abs(2.0 * a - s * s) > 1e-9 * (1.0 + s * s) ||
          std::abs(c.b + s * s * s) > 1e-9 * (1.0 + std::abs(s * s * s)))
        return reject("StumponConstants");
      return v;
    }
    if (!constant_consistent(c, s)) return reject("ConstantNotStationary");
    if (!m.slope.is_finite() || std::abs(m.slope.value) > 1e-9) return reject("SlopeMismatch");
    if (std::abs(c.b - m.b) > 1e-9 * (1.0 + std::abs(c.b))) return reject("BMismatch");
    return v;
  }

  const bool bounded = left.slope.is_finite() && right.slope.is_finite();
  if (!bounded) {
    if (!at_s) return reject("UnboundedSlopeAwayFromS");
    return v;
  }
  const double sl = left.slope.value, sr = right.slope.value;
  const double slope_tol = 1e-9 * (1.0 + std::abs(sl));
  if (std::abs(sl - sr) <= slope_tol) {
    if (std::abs(left.b - right.b) > 1e-9 * (1.0 + std::abs(left.b))) return reject("BMismatch");
    v.kind = GlueKind::SmoothC1;
    return v;
  }
  if (!at_s) return reject("SlopeMismatch");
  if (std::abs(sl + sr) > slope_tol) return reject("SlopeMismatch");
  v.kind = GlueKind::Peak;
  if (std::abs(left.b - right.b) > 1e-9 * (1.0 + std::abs(left.b))) return reject("BMismatch");
  if (std::abs(2.0 * a * s + left.b) > 1e-9 * (1.0 + std::abs(left.b))) return reject("PeakCondition");
  return v;
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrorCode::InvalidInput, std::string("unknown key in ") + where + ": " + it.key());
  }
}

double num(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorCode::InvalidInput, std::string("missing numeric field: ") + key);
  return j.at(key).get<double>();
}

double num_or_inf(const nlohmann::json& j, const char* key) {
  if (j.contains(key) && j.at(key).is_string()) {
    const std::string v = j.at(key).get<std::string>();
    if (v == "inf") return Segment::kInf;
    if (v == "-inf") return -Segment::kInf;
  }
  return num(j, key);
}

}  // namespace

Plan plan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "plan must be an object");
  reject_unknown(j, {"a", "pieces", "xi0"}, "plan");
  if (!j.contains("pieces") || !j.at("pieces").is_array())
    throw Error(ErrorCode::InvalidInput, "plan.pieces must be an array");
  Plan p;
  if (j.contains("a")) p.a = num(j, "a");
  if (j.contains("xi0")) p.xi0 = num(j, "xi0");
  for (const auto& pj : j.at("pieces")) {
    if (!pj.is_object() || !pj.contains("type") || !pj.at("type").is_string())
      throw Error(ErrorCode::InvalidInput, "plan piece needs a type");
    const std::string type = pj.at("type").get<std::string>();
    Piece q;
    if (type == "const") {
      reject_unknown(pj, {"type", "w", "length", "b", "a"}, "const piece");
      q.type = Piece::Type::Const;
      q.w = num(pj, "w");
      if (pj.contains("length")) q.length = num(pj, "length");
      if (pj.contains("b")) q.b_const = num(pj, "b");
    } else if (type == "mono") {
      reject_unknown(pj, {"type", "b", "dir", "from", "to", "a"}, "mono piece");
      q.type = Piece::Type::Mono;
      q.b = num(pj, "b");
      const std::string d = pj.contains("dir") && pj.at("dir").is_string() ? pj.at("dir").get<std::string>() : "";
      if (d == "inc") q.dir = Orientation::Increasing;
      else if (d == "dec") q.dir = Orientation::Decreasing;
      else throw Error(ErrorCode::InvalidInput, "dir must be inc or dec");
      q.from = num(pj, "from");
      q.to = num(pj, "to");
    } else if (type == "exp") {
      reject_unknown(pj, {"type", "c1", "c2", "e", "x_lo", "x_hi", "a"}, "exp piece");
      q.type = Piece::Type::ExpPeak;
      q.c1 = num(pj, "c1");
      q.c2 = num(pj, "c2");
      q.e = static_cast<int>(num(pj, "e"));
      q.x_lo = num_or_inf(pj, "x_lo");
      q.x_hi = num_or_inf(pj, "x_hi");
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown piece type: " + type);
    }
    if (pj.contains("a")) q.a = num(pj, "a");
    p.pieces.push_back(q);
  }
  return p;
}

nlohmann::json plan_to_json(const Plan& p) {
  auto inf_json = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  nlohmann::json pieces = nlohmann::json::array();
  for (const Piece& q : p.pieces) {
    nlohmann::json j;
    switch (q.type) {
      case Piece::Type::Const:
        j = {{"type", "const"}, {"w", q.w}};
        if (q.length) j["length"] = *q.length;
        if (q.b_const) j["b"] = *q.b_const;
        break;
      case Piece::Type::Mono:
        j = {{"type", "mono"}, {"b", q.b}, {"dir", to_string(q.dir)}, {"from", q.from}, {"to", q.to}};
        break;
      case Piece::Type::ExpPeak:
        j = {{"type", "exp"}, {"c1", q.c1}, {"c2", q.c2}, {"e", q.e}, {"x_lo", inf_json(q.x_lo)}, {"x_hi", inf_json(q.x_hi)}};
        break;
    }
    if (q.a) j["a"] = *q.a;
    pieces.push_back(j);
  }
  return {{"a", p.a}, {"pieces", pieces}, {"xi0", p.xi0}};
}

namespace {

double exp_value(const Piece& q, double x) {
  if (std::isinf(x)) return 0.0;
  return q.c1 * std::exp(q.e * x) + q.c2 * std::exp(-q.e * x);
}

double start_value(const Piece& q) {
  switch (q.type) {
    case Piece::Type::Const: return q.w;
    case Piece::Type::Mono: return q.from;
    case Piece::Type::ExpPeak: return exp_value(q, q.x_lo);
  }
  return 0.0;
}

double end_value(const Piece& q) {
  switch (q.type) {
    case Piece::Type::Const: return q.w;
    case Piece::Type::Mono: return q.to;
    case Piece::Type::ExpPeak: return exp_value(q, q.x_hi);
  }
  return 0.0;
}

}  // namespace

Profile assemble_ch(double s, const Plan& plan, const Tolerances& tol, bool checked) {
  tol.validate();
  if (plan.pieces.empty()) throw Error(ErrorCode::InvalidInput, "empty plan");
  if (!std::isfinite(s) || !std::isfinite(plan.a)) throw Error(ErrorCode::InvalidInput, "s and a must be finite");
  const std::size_t n = plan.pieces.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(end_value(plan.pieces[i]) - start_value(plan.pieces[i + 1])) > tol.glue_value_tol)
      throw Error(ErrorCode::InadmissiblePlan, "junction " + std::to_string(i) + ": ValueMismatch", i);

  std::map<std::tuple<double, double, double, double, int>, Segment> cache;
  std::vector<Segment> segs;
  double cursor = plan.xi0;
  for (std::size_t i = 0; i < n; ++i) {
    const Piece& q = plan.pieces[i];
    const double a = q.a.value_or(plan.a);
    const bool first = i == 0, last = i + 1 == n;
    Segment seg;
    if (q.type == Piece::Type::Const) {
      const double w = q.w;
      const double b = q.b_const.value_or(w * w * w - s * w * w - 2.0 * a * w);
      const ChConstants k{a, b};
      if (q.length && !(*q.length > 0.0)) throw Error(ErrorCode::InvalidInput, "constant length must be positive");
      if (n == 1) {
        seg = q.length ? Segment::constant(w, k, plan.xi0, plan.xi0 + *q.length)
                       : Segment::constant(w, k, -Segment::kInf, Segment::kInf);
      } else if (first) {
        seg = Segment::constant(w, k, q.length ? plan.xi0 - *q.length : -Segment::kInf, plan.xi0);
      } else if (last || q.length) {
        seg = Segment::constant(w, k, cursor, q.length ? cursor + *q.length : Segment::kInf);
      } else {
        throw Error(ErrorCode::InvalidInput, "interior constant piece needs a length");
      }
    } else {
      if (q.type == Piece::Type::Mono) {
        const auto key = std::make_tuple(a, q.b, q.from, q.to, static_cast<int>(q.dir));
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, mono_segment(s, a, q.b, q.from, q.to, q.dir, tol)).first;
        seg = it->second;
      } else {
        const double a_exp = q.a.value_or(2.0 * q.c1 * q.c2);
        seg = Segment::exp_peak(q.c1, q.c2, q.e, 0.0, q.x_lo, q.x_hi, ChConstants{a_exp, -2.0 * a_exp * s});
      }
      const bool left_finite = std::isfinite(seg.xi_lo()), right_finite = std::isfinite(seg.xi_hi());
      if ((!first && !left_finite) || (!last && !right_finite))
        throw Error(ErrorCode::InvalidInput, "an infinite tail must sit at an end of the plan");
      if (first && (n > 1 || !left_finite)) seg.place_right_at(plan.xi0);
      else seg.place_left_at(cursor);
    }
    cursor = seg.xi_hi();
    segs.push_back(std::move(seg));
  }

  Profile prof;
  prof.equation = Equation::Ch;
  prof.s = s;
  prof.tol = tol;
  prof.plan = plan_to_json(plan);
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    GluePoint g = make_glue_point(segs, i);
    g.verdict = check_glue_ch(side_of(segs[i], true), side_of(segs[i + 1], false), s, tol);
    g.kind = g.verdict.kind;
    if (checked && !g.verdict.admissible)
      throw Error(ErrorCode::InadmissiblePlan, "junction " + std::to_string(i) + ": " + g.verdict.reason, i);
    prof.breakpoints.push_back(g);
  }
  prof.segments = std::move(segs);
  return prof;
}

Plan plan_for(double s, double a, double b, const Taxonomy& tax, const BuildOptions& opt, const Tolerances& tol) {
  Plan plan;
  plan.a = a;
  auto mono = [&](double bb, double from, double to) {
    Piece q;
    q.type = Piece::Type::Mono;
    q.b = bb;
    q.from = from;
    q.to = to;
    q.dir = to > from ? Orientation::Increasing : Orientation::Decreasing;
    return q;
  };
  switch (tax.kind) {
    case Kind::CusponWithDecay:
    case Kind::PeakonWithDecay:
    case Kind::MirrorCase: {
      plan.pieces = {mono(b, tax.w_min, s), mono(b, s, tax.w_min)};
      return plan;
    }
    case Kind::PeriodicCuspon:
    case Kind::PeriodicPeakon: {
      // Base of the arc: the zero next to s on the bounded side.
      const double base = tax.etas[1];
      const Segment down = mono_segment(s, a, b, s, base, base < s ? Orientation::Decreasing : Orientation::Increasing, tol);
      const Segment up = mono_segment(s, a, b, base, s, base < s ? Orientation::Increasing : Orientation::Decreasing, tol);
      const double L1 = down.length_total(), P = L1 + up.length_total();
      if (!(opt.window.lo < opt.window.hi)) throw Error(ErrorCode::InvalidInput, "window needs lo < hi");
      const double n_lo = std::floor(opt.window.lo / P);
      double n_hi = std::ceil(opt.window.hi / P);
      if (n_hi <= n_lo) n_hi = n_lo + 1;
      const double periods = n_hi - n_lo;
      if (periods > 5000) throw Error(ErrorCode::NotConstructible, "window holds too many periods");
      for (int k = 0; k < static_cast<int>(periods); ++k) {
        plan.pieces.push_back(mono(b, s, base));
        plan.pieces.push_back(mono(b, base, s));
      }
      plan.xi0 = n_lo * P + L1;
      return plan;
    }
    case Kind::StumponCompatible: {
      const double D = s * s + 6.0 * a;
      if (!(D > 0.0) || s == 0.0) throw Error(ErrorCode::NotConstructible, "no cuspon halves for this stumpon");
      const double z = s > 0 ? (s - std::sqrt(D)) / 3.0 : (s + std::sqrt(D)) / 3.0;
      const double bstar = -(((-z + s) * z + 2.0 * a) * z);
      const double eta = s - 2.0 * z;
      const bool ok = s > 0 ? (z < s && s < eta) : (eta < s && s < z);
      if (!ok) throw Error(ErrorCode::NotConstructible, "no cuspon halves for this stumpon");
      Piece plateau;
      plateau.type = Piece::Type::Const;
      plateau.w = s;
      plateau.length = opt.plateau_length;
      plateau.b_const = b;
      plan.pieces = {mono(bstar, z, s), plateau, mono(bstar, s, z)};
      return plan;
    }
    default:
      throw Error(ErrorCode::NotConstructible, std::string("kind is not constructible: ") + to_string(tax.kind));
  }
}

Profile build_ch_profile(double s, double a, double b, std::optional<Kind> kind, const BuildOptions& opt,
                         const Tolerances& tol) {
  const Taxonomy tax = classify_ch(s, a, b);
  if (kind && *kind != tax.kind)
    throw Error(ErrorCode::NotConstructible,
                std::string("requested kind ") + to_string(*kind) + " but the triple is " + to_string(tax.kind));
  if (!constructible(tax.kind))
    throw Error(ErrorCode::NotConstructible, std::string("kind is not constructible: ") + to_string(tax.kind));
  return assemble_ch(s, plan_for(s, a, b, tax, opt, tol), tol, true);
}

}  // namespace weakwave::ch
