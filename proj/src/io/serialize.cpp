#include "weakwave/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "weakwave/error.hpp"

namespace weakwave {

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  throw Error(ErrorCode::InvalidInput, "expected a number, got " + j.dump());
}

json slope_json(const Slope& s) {
  if (s.is_finite()) return s.value;
  return s.inf > 0 ? "inf" : "-inf";
}

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrorCode::InvalidInput, std::string("unknown key in ") + what + ": " + it.key());
  }
}

double need(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing key: ") + key);
  return number_from_json(j.at(key));
}

}  // namespace

json to_json(const CoefficientSpec& spec) {
  json j;
  j["family"] = to_string(spec.family());
  const auto& p = spec.params();
  switch (spec.family()) {
    case Family::SqrtSin: j["q"] = p[0]; break;
    case Family::ArctanLinear:
      j["alpha"] = p[0];
      j["beta"] = p[1];
      break;
    case Family::LcDirector:
      j["lambda1"] = p[0];
      j["lambda2"] = p[1];
      break;
    case Family::TabulatedSpline: {
      json nodes = json::array();
      for (const auto& [u, c] : spec.nodes()) nodes.push_back({u, c});
      j["nodes"] = nodes;
      break;
    }
  }
  return j;
}

CoefficientSpec coefficient_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw Error(ErrorCode::InvalidInput, "coefficient needs a string \"family\"");
  const std::string f = j["family"].get<std::string>();
  if (f == "SqrtSin") {
    only_keys(j, {"family", "q"}, "coefficient");
    return CoefficientSpec::sqrt_sin(need(j, "q"));
  }
  if (f == "ArctanLinear") {
    only_keys(j, {"family", "alpha", "beta"}, "coefficient");
    return CoefficientSpec::arctan_linear(need(j, "alpha"), need(j, "beta"));
  }
  if (f == "LcDirector") {
    only_keys(j, {"family", "lambda1", "lambda2"}, "coefficient");
    return CoefficientSpec::lc_director(need(j, "lambda1"), need(j, "lambda2"));
  }
  if (f == "TabulatedSpline") {
    only_keys(j, {"family", "nodes"}, "coefficient");
    if (!j.contains("nodes") || !j["nodes"].is_array())
      throw Error(ErrorCode::InvalidInput, "TabulatedSpline needs a \"nodes\" array");
    std::vector<std::pair<double, double>> nodes;
    for (const auto& n : j["nodes"]) {
      if (!n.is_array() || n.size() != 2) throw Error(ErrorCode::InvalidInput, "spline node must be [u, c]");
      nodes.emplace_back(number_from_json(n[0]), number_from_json(n[1]));
    }
    return CoefficientSpec::tabulated(std::move(nodes));
  }
  throw Error(ErrorCode::InvalidInput, "unknown coefficient family: " + f);
}

json to_json(const Tolerances& t) {
  return {{"root_tol", t.root_tol},
          {"quad_abs_tol", t.quad_abs_tol},
          {"invariant_rel_tol", t.invariant_rel_tol},
          {"degenerate_cprime_tol", t.degenerate_cprime_tol},
          {"glue_value_tol", t.glue_value_tol},
          {"tail_cutoff_epsilon", t.tail_cutoff_epsilon}};
}

json to_json(const Constants& c) {
  if (const auto* n = std::get_if<NvwConstants>(&c)) return {{"k", n->k}};
  const auto& h = std::get<ChConstants>(c);
  return {{"a", h.a}, {"b", h.b}};
}

json to_json(const Segment& seg) {
  json j;
  j["kind"] = to_string(seg.kind());
  j["constants"] = to_json(seg.constants());
  j["xi_lo"] = number_json(seg.xi_lo());
  j["xi_hi"] = number_json(seg.xi_hi());
  switch (seg.kind()) {
    case SegmentKind::Constant: j["w"] = seg.wbar(); break;
    case SegmentKind::Monotone:
      j["orientation"] = to_string(seg.orientation());
      j["w_lo"] = seg.w_lo();
      j["w_hi"] = seg.w_hi();
      j["endpoint_lo"] = {{"flag", to_string(seg.endpoint_lo().flag)}, {"rate", seg.endpoint_lo().rate}};
      j["endpoint_hi"] = {{"flag", to_string(seg.endpoint_hi().flag)}, {"rate", seg.endpoint_hi().rate}};
      j["length"] = seg.length_total();
      break;
    case SegmentKind::ExpPeak:
      j["c1"] = seg.c1();
      j["c2"] = seg.c2();
      j["e"] = seg.exp_sign();
      j["gamma0"] = seg.gamma0();
      break;
  }
  return j;
}

json to_json(const GluePoint& g) {
  return {{"xi_star", g.xi_star},
          {"w_star", g.w_star},
          {"kind", to_string(g.kind)},
          {"left_slope", slope_json(g.left_slope)},
          {"right_slope", slope_json(g.right_slope)},
          {"left_constants", to_json(g.left_constants)},
          {"right_constants", to_json(g.right_constants)},
          {"left_segment", g.left_segment},
          {"admissible", g.verdict.admissible},
          {"reason", g.verdict.reason}};
}

json to_json(const Profile& p) {
  json j;
  j["equation"] = to_string(p.equation);
  j["s"] = p.s;
  if (p.coefficient) j["coefficient"] = to_json(*p.coefficient);
  j["tolerances"] = to_json(p.tol);
  j["plan"] = p.plan;
  j["xi_lo"] = number_json(p.xi_lo());
  j["xi_hi"] = number_json(p.xi_hi());
  j["admissible"] = p.admissible();
  json segs = json::array();
  for (const auto& s : p.segments) segs.push_back(to_json(s));
  j["segments"] = segs;
  json bps = json::array();
  for (const auto& g : p.breakpoints) bps.push_back(to_json(g));
  j["breakpoints"] = bps;
  return j;
}

Profile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("equation") || !j.contains("plan") || !j.contains("s"))
    throw Error(ErrorCode::InvalidInput, "profile JSON needs equation, s and plan");
  Tolerances tol;
  if (j.contains("tolerances"))
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
      tol.set(it.key(), number_from_json(it.value()));
  const double s = number_from_json(j["s"]);
  const std::string eq = j["equation"].get<std::string>();
  if (eq == "nvw") {
    if (!j.contains("coefficient")) throw Error(ErrorCode::InvalidInput, "NVW profile needs a coefficient");
    return nvw::assemble_nvw(coefficient_from_json(j["coefficient"]), s, nvw::plan_from_json(j["plan"]), tol,
                             false);
  }
  if (eq == "ch") return ch::assemble_ch(s, ch::plan_from_json(j["plan"]), tol, false);
  throw Error(ErrorCode::InvalidInput, "unknown equation: " + eq);
}

json to_json(const nvw::SpeedRegime& r) {
  return {{"regime", nvw::to_string(r.regime)}, {"s", r.s}, {"alpha", r.alpha}, {"beta", r.beta}};
}

json to_json(const nvw::GlueCandidate& c) {
  return {{"u_star", c.u_star}, {"cprime", c.cprime}, {"degenerate", c.degenerate}};
}

json to_json(const ch::CubicAnalysis& a) {
  json zeros = json::array();
  for (const auto& z : a.zeros) zeros.push_back({{"value", z.value}, {"multiplicity", z.multiplicity}});
  json j = {{"s", a.s},
            {"a", a.a},
            {"b", a.b},
            {"g_coeffs", a.g_coeffs},
            {"crit_exists", a.crit_exists},
            {"discriminant", a.discriminant},
            {"zeros", zeros},
            {"has_complex_pair", a.has_complex_pair}};
  if (a.crit_exists) {
    j["w_min"] = a.w_min;
    j["w_max"] = a.w_max;
  }
  if (a.has_complex_pair) j["quadratic"] = {{"p1", a.quad_p1}, {"p0", a.quad_p0}};
  return j;
}

json to_json(const ch::Taxonomy& t) {
  json j;
  j["kind"] = ch::to_string(t.kind);
  j["inner_kind"] = ch::to_string(t.inner_kind);
  j["stumpon_compatible"] = t.stumpon_compatible;
  j["reflected"] = t.reflected;
  j["constructible"] = ch::constructible(t.kind);
  switch (t.inner_kind) {
    case ch::Kind::CusponWithDecay:
    case ch::Kind::PeakonWithDecay:
      j["w_min"] = t.w_min;
      j["eta"] = t.eta;
      break;
    case ch::Kind::PeriodicCuspon:
    case ch::Kind::PeriodicPeakon: j["etas"] = t.etas; break;
    default: break;
  }
  json certs = json::object();
  for (const auto& [k, c] : t.certificates) certs[k] = {{"residual", c.residual}, {"ok", c.ok}};
  j["certificates"] = certs;
  j["analysis"] = to_json(t.analysis);
  return j;
}

json to_json(const verify::ResidualResult& r) {
  return {{"gamma0", r.bump.gamma0},
          {"d_x", r.bump.d_x},
          {"t_lo", r.bump.t_lo},
          {"t_hi", r.bump.t_hi},
          {"amplitude", r.bump.amplitude},
          {"R", r.R},
          {"N", r.N},
          {"normalized", r.normalized},
          {"quad_error", r.quad_error},
          {"cells", r.cells}};
}

json to_json(const verify::JumpEntry& j) {
  json v = json::object();
  for (const auto& [k, x] : j.values) v[k] = number_json(x);
  return {{"index", j.index},     {"xi_star", j.xi_star}, {"w_star", j.w_star}, {"kind", to_string(j.kind)},
          {"admissible", j.admissible}, {"reason", j.reason},   {"values", v}};
}

json to_json(const verify::ResidualReport& r) {
  json e = json::array();
  for (const auto& x : r.entries) e.push_back(to_json(x));
  json jm = json::array();
  for (const auto& x : r.jumps) jm.push_back(to_json(x));
  return {{"max_normalized", r.max_normalized},
          {"median_normalized", r.median_normalized},
          {"all_junctions_admissible", r.all_junctions_admissible},
          {"total_cells", r.total_cells},
          {"total_quad_error", r.total_quad_error},
          {"entries", e},
          {"jumps", jm}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<SampleRow>& rows) {
  os << "xi,w,slope,flag\n";
  for (const auto& r : rows) {
    os << format_double(r.xi) << ',' << format_double(r.w) << ',';
    if (r.flag != "singular" && r.left_slope.is_finite()) os << format_double(r.left_slope.value);
    os << ',' << r.flag << '\n';
  }
}

}  // namespace weakwave
