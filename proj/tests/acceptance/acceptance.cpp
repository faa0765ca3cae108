#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "weakwave/ch.hpp"
#include "weakwave/cli.hpp"
#include "weakwave/error.hpp"
#include "weakwave/nvw.hpp"
#include "weakwave/residual.hpp"

using namespace weakwave;
constexpr double pi = std::numbers::pi;

namespace {

const std::string data = WEAKWAVE_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::ostringstream msg;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      msg << " [fail: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nvw::Piece nmono(double k, double from, double to) {
  nvw::Piece p;
  p.k = k;
  p.from = from;
  p.to = to;
  p.dir = to > from ? Orientation::Increasing : Orientation::Decreasing;
  return p;
}

nvw::Piece nflat(double w) {
  nvw::Piece p;
  p.constant = true;
  p.w = w;
  return p;
}

Profile nvw_profile(const CoefficientSpec& spec, double s, std::vector<nvw::Piece> pieces, bool checked = true) {
  nvw::Plan p;
  p.pieces = std::move(pieces);
  return nvw::assemble_nvw(spec, s, p, {}, checked);
}

Profile intro_profile() { return nvw_profile(CoefficientSpec::sqrt_sin(4), 2.0, {nflat(pi), nmono(1, pi, 0), nflat(0)}); }

double max_normalized(const Profile& p) { return verify::residual_suite(p).max_normalized; }

void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = CoefficientSpec::sqrt_sin(4);
  const auto seg = nvw::segment_between(spec, 2.0, 1.0, pi, 0.0, Orientation::Decreasing);
  const double half = seg.length_total() / 2;
  const double ref = oracle::tanh_sinh([](double x) { return std::sqrt(std::sin(x)); }, 0, pi / 2);
  const double dt = seconds_since(t0);
  o.msg << "half-length " << half << " oracle " << ref << " closed form " << oracle::sqrt_sin_quarter() << " in "
        << dt << " s";
  o.require(half >= 1.0 && half <= pi / 2, "bounds");
  o.require(std::abs(half - ref) <= 1e-8, "oracle");
  o.require(std::abs(ref - oracle::sqrt_sin_quarter()) <= 1e-10, "oracle routes disagree");
  o.require(dt < 1.0, "runtime");
}

void criterion2(Outcome& o) {
  const auto sq = CoefficientSpec::sqrt_sin(4);
  const auto lc = CoefficientSpec::lc_director(4, 1);
  const auto ar = CoefficientSpec::arctan_linear(1, 3);
  const double u1 = std::asin(std::sqrt(5.0 / 12.0));
  std::vector<std::pair<std::string, std::function<Profile()>>> cases = {
      {"nvw intro", intro_profile},
      {"nvw cusp", [&] { return nvw_profile(sq, 2.0, {nmono(1, 0, pi), nmono(2, pi, 0)}); }},
      {"nvw lc", [&] { return nvw_profile(lc, 1.5, {nmono(1, u1, pi - u1), nmono(1, pi - u1, u1)}); }},
      {"nvw arctan", [&] { return nvw_profile(ar, 2.5, {nmono(0.7, -3, 1), nmono(1, 1, 5)}, false); }},
      {"ch peakon", [] { return ch::build_ch_profile(1, 0, 0); }},
      {"ch cuspon", [] { return ch::build_ch_profile(1, 2.5, 3); }},
      {"ch periodic cuspon", [] { return ch::build_ch_profile(1, 1, 0); }},
      {"ch periodic peakon", [] { return ch::build_ch_profile(1, 0.125, -0.25); }},
      {"ch stumpon", [] { return ch::build_ch_profile(1, 0.5, -1); }},
  };
  double worst = 0, slowest = 0;
  int segs = 0;
  for (const auto& [name, make] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const Profile p = make();
    double r = 0;
    for (const auto& seg : p.segments) {
      r = std::max(r, p.equation == Equation::Nvw ? nvw_invariant_residual(seg, *p.coefficient, p.s, 1000)
                                                  : ch_invariant_residual(seg, p.s, 1000));
      ++segs;
    }
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    worst = std::max(worst, r);
    o.require(r <= 1e-6, name + " invariant");
    o.require(dt < 1.0, name + " runtime");
  }
  o.msg << segs << " segments, worst invariant residual " << worst << ", slowest profile " << slowest << " s";
}

void criterion3(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Profile p = ch::build_ch_profile(1, 0, 0);
  double err = 0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = -30 + 60.0 * i / 20000;
    err = std::max(err, std::abs(profile_eval(p, x).w - std::exp(-std::abs(x))));
  }
  const double r = max_normalized(p);
  const double dt = seconds_since(t0);
  o.msg << "profile error " << err << ", max normalized residual " << r << " in " << dt << " s";
  o.require(err <= 1e-10, "closed form");
  o.require(r <= 1e-6, "residual");
  o.require(dt < 10.0, "runtime");
}

void criterion4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> U(-3, 3);
  int disagree = 0;
  for (int i = 0; i < 1000; ++i) {
    double s = U(rng), a = U(rng), b = U(rng);
    if (i % 4 == 0) {
      // double zero d and simple zero e
      const double d = U(rng), e = U(rng);
      s = 2 * d + e;
      a = -(d * d + 2 * d * e) / 2;
      b = d * d * e;
    } else if (i % 4 == 1) {
      s = U(rng);
      a = s * s / 2;
      b = -s * s * s;
    }
    const auto tax = ch::classify_ch(s, a, b);
    const double ms = s < 0 ? -s : s, mb = s < 0 ? -b : b;
    const auto an = ch::analyze_g(ms, a, mb);
    const auto bz = oracle::brute_zeros(ms, a, mb);
    std::vector<double> simple;
    int doubles = 0;
    for (const auto& z : an.zeros) {
      if (z.multiplicity == 1) simple.push_back(z.value);
      if (z.multiplicity == 2) ++doubles;
    }
    bool ok = simple.size() == bz.simple.size() && doubles == static_cast<int>(bz.doubles.size());
    for (std::size_t k = 0; ok && k < simple.size(); ++k)
      ok = std::abs(simple[k] - bz.simple[k]) <= 1e-7 * (1 + std::abs(bz.simple[k]));
    ok = ok && std::string(ch::to_string(tax.kind)) == oracle::brute_kind(s, a, b);
    if (!ok) {
      if (disagree < 5) o.msg << std::setprecision(17) << " (" << s << ", " << a << ", " << b << ")";
      ++disagree;
    }
  }
  const double dt = seconds_since(t0);
  o.msg << " " << disagree << " disagreements in 1000 triples, " << dt << " s";
  o.require(disagree == 0, "disagreements");
  o.require(dt < 30.0, "runtime");
}

Profile cuspon_const() {
  ch::Plan p;
  p.a = 2.5;
  ch::Piece up;
  up.type = ch::Piece::Type::Mono;
  up.b = 3;
  up.dir = Orientation::Increasing;
  up.from = -1;
  up.to = 1;
  ch::Piece flat;
  flat.w = 1;
  flat.length = 2;
  ch::Piece dn = up;
  dn.dir = Orientation::Decreasing;
  dn.from = 1;
  dn.to = -1;
  p.pieces = {up, flat, dn};
  return ch::assemble_ch(1, p, {}, false);
}

Profile a_mismatch() {
  const double r = std::sqrt(0.8);
  ch::Plan p;
  ch::Piece l;
  l.type = ch::Piece::Type::ExpPeak;
  l.c1 = 1;
  l.c2 = 0;
  l.x_lo = -3;
  l.x_hi = 0;
  ch::Piece q = l;
  q.a = 0.1;
  q.c1 = (1 - r) / 2;
  q.c2 = (1 + r) / 2;
  q.x_lo = 0;
  q.x_hi = 3;
  p.pieces = {l, q};
  return ch::assemble_ch(1, p, {}, false);
}

void criterion5(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const double base = max_normalized(ch::build_ch_profile(1, 0, 0));
  const std::vector<std::pair<std::string, Profile>> cases = {
      {"ch a-mismatch", a_mismatch()},
      {"nvw k-mismatch", nvw_profile(CoefficientSpec::sqrt_sin(4), 2.0, {nmono(1, 0, pi / 2), nmono(4, pi / 2, pi)}, false)},
      {"ch constant on cuspon", cuspon_const()},
  };
  for (const auto& [name, p] : cases) {
    const double r = max_normalized(p);
    o.msg << name << " " << r << " (" << (base > 0 ? r / base : INFINITY) << "x baseline); ";
    o.require(!p.admissible(), name + " verdict");
    o.require(r >= 1e-2, name + " residual");
  }
  const double dt = seconds_since(t0);
  o.msg << dt << " s";
  o.require(dt < 30.0, "runtime");
}

void criterion6(Outcome& o) {
  const Profile p = ch::build_ch_profile(1, 0.5, -1);
  bool glue_ok = !p.breakpoints.empty();
  for (const auto& g : p.breakpoints) {
    const auto l = ch::side_of(p.segments[g.left_segment], true);
    const auto r = ch::side_of(p.segments[g.left_segment + 1], false);
    glue_ok = glue_ok && ch::check_glue_ch(l, r, p.s, p.tol).admissible;
  }
  const double res = max_normalized(p);
  auto plan = ch::plan_from_json(p.plan);
  for (auto& q : plan.pieces)
    if (q.type == ch::Piece::Type::Const) q.b_const = *q.b_const + 1e-3;
  const Profile bad = ch::assemble_ch(1, plan, {}, false);
  o.msg << "stumpon residual " << res << ", perturbed verdict " << (bad.admissible() ? "admissible" : "inadmissible");
  if (!bad.admissible()) o.msg << " (" << bad.breakpoints[0].verdict.reason << ")";
  o.require(glue_ok, "check_glue_ch");
  o.require(res <= 1e-5, "residual");
  o.require(!bad.admissible(), "perturbation");
}

double tail_rate(const Profile& p, double w_inf, double x) {
  const auto w = [&](double xi) { return profile_eval(p, xi).w - w_inf; };
  return std::log(w(x) / w(x - 1.0));
}

void criterion7(Outcome& o) {
  struct Case {
    double s, a, b;
  };
  for (const Case c : {Case{1, 2.5, 3}, Case{2, 3.5, 4}}) {
    const auto tax = ch::classify_ch(c.s, c.a, c.b);
    const double lam = std::sqrt((tax.eta - tax.w_min) / (c.s - tax.w_min));
    ch::BuildOptions opt;
    opt.window = {-30, 30};
    const Profile p = ch::build_ch_profile(c.s, c.a, c.b, std::nullopt, opt);
    const double r = tail_rate(p, tax.w_min, -12.0);
    o.msg << "cuspon (" << c.s << "," << c.a << "," << c.b << ") rate " << r << " vs " << lam << "; ";
    o.require(tax.kind == ch::Kind::CusponWithDecay, "kind");
    o.require(std::abs(r / lam - 1) <= 0.01, "cuspon rate");
  }
  for (double s : {1.0, 2.0}) {
    ch::BuildOptions opt;
    opt.window = {-30, 30};
    const Profile p = ch::build_ch_profile(s, 0, 0, std::nullopt, opt);
    const double r = -tail_rate(p, 0.0, 13.0);
    o.msg << "peakon s=" << s << " rate " << std::abs(r) << "; ";
    o.require(std::abs(std::abs(r) - 1) <= 0.01, "peakon rate");
  }
}

void criterion8(Outcome& o) {
  const auto sq = CoefficientSpec::sqrt_sin(4);
  const std::vector<std::pair<std::string, Profile>> cases = {
      {"nvw cusp", nvw_profile(sq, 2.0, {nmono(1, 0, pi), nmono(1, pi, 0)})},
      {"nvw intro", intro_profile()},
      {"nvw inflection", nvw_profile(sq, 2.0, {nmono(1, 0, pi), nmono(1, pi, 2 * pi)})},
      {"ch cuspon", ch::build_ch_profile(1, 2.5, 3)},
      {"ch periodic cuspon", ch::build_ch_profile(1, 1, 0)},
  };
  int n = 0;
  for (const auto& [name, p] : cases) {
    for (const auto& g : p.breakpoints) {
      if (g.kind != GlueKind::Cusp && g.kind != GlueKind::InflectionSingular && g.kind != GlueKind::ConstantJunction)
        continue;
      const bool singular = !g.left_slope.is_finite() || !g.right_slope.is_finite();
      if (!singular) continue;
      const double h = nvw::holder_exponent(p, g.xi_star);
      if (n < 8) o.msg << name << " " << to_string(g.kind) << " " << h << "; ";
      o.require(h >= 0.45 && h <= 0.55, name + " exponent");
      ++n;
    }
  }
  o.msg << n << " singular glue points";
  o.require(n > 0, "no glue points");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void criterion9(Outcome& o) {
  const auto root = std::filesystem::temp_directory_path() / "weakwave_acceptance";
  std::filesystem::remove_all(root);
  auto run = [&](std::vector<std::string> args, const std::string& tag) {
    std::filesystem::remove_all(root / tag);
    args.push_back("--out");
    args.push_back((root / tag).string());
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::string bytes = std::to_string(code) + "\n" + out.str();
    for (const char* f : {"profile.csv", "profile.json", "report.json"})
      if (std::filesystem::exists(root / tag / f)) bytes += slurp(root / tag / f);
    return bytes;
  };
  const std::vector<std::vector<std::string>> cmds = {
      {"classify", "--spec", data + "/peakon_ch.json"},
      {"build", "--spec", data + "/intro_nvw.json"},
      {"verify", "--spec", data + "/intro_nvw.json", "--seed", "7"},
      {"verify", "--spec", data + "/a_mismatch_ch.json", "--seed", "7"},
      {"sweep", "--spec", data + "/sweep_ch.json", "--jobs", "4", "--seed", "7"},
  };
  int same = 0;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const std::string a = run(cmds[i], std::to_string(i));
    const std::string b = run(cmds[i], std::to_string(i));
    o.require(a == b, cmds[i][0] + " bytes differ");
    o.require(a.size() > 2, cmds[i][0] + " empty output");
    same += a == b;
  }
  o.msg << same << "/" << cmds.size() << " commands byte-identical across runs";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance N\n";
    return 2;
  }
  const int n = std::atoi(argv[1]);
  const std::vector<std::function<void(Outcome&)>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                           criterion6, criterion7, criterion8, criterion9};
  if (n < 1 || n > 9) {
    std::cerr << "criterion must be 1..9\n";
    return 2;
  }
  Outcome o;
  try {
    all[n - 1](o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.msg << " [exception: " << e.what() << "]";
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << o.msg.str() << "\n";
  return o.pass ? 0 : 1;
}
