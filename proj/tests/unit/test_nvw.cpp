#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "weakwave/error.hpp"
#include "weakwave/nvw.hpp"

using namespace weakwave;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidInput;
}

nvw::Piece mono(double k, double from, double to) {
  nvw::Piece p;
  p.k = k;
  p.from = from;
  p.to = to;
  p.dir = to > from ? Orientation::Increasing : Orientation::Decreasing;
  return p;
}

nvw::Piece flat(double w, std::optional<double> length = std::nullopt) {
  nvw::Piece p;
  p.constant = true;
  p.w = w;
  p.length = length;
  return p;
}

}  // namespace

TEST_CASE("speed regimes") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  CHECK(nvw::speed_regime(spec, 2.0).regime == nvw::Regime::InteriorBand);
  CHECK(nvw::speed_regime(spec, -2.0).regime == nvw::Regime::InteriorBand);
  CHECK(nvw::speed_regime(spec, 3.0).regime == nvw::Regime::OutsideBand);
  CHECK(nvw::speed_regime(spec, 0.5).regime == nvw::Regime::OutsideBand);
  CHECK(nvw::speed_regime(spec, std::sqrt(5.0)).regime == nvw::Regime::BoundaryBand);
  CHECK(nvw::speed_regime(spec, std::sqrt(3.0)).regime == nvw::Regime::BoundaryBand);
}

TEST_CASE("glue candidates at multiples of pi") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  const auto c = nvw::glue_candidates(spec, 2.0, -0.5, 10.0);
  REQUIRE(c.size() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(c[n].u_star == Approx(n * pi).epsilon(1e-12));
    CHECK(std::abs(c[n].cprime) == Approx(0.25));
    CHECK_FALSE(c[n].degenerate);
  }
  const auto e = nvw::glue_candidates(spec, 2.0, 0.0, 2 * pi);
  CHECK(e.size() == 3);
}

TEST_CASE("touching roots are degenerate candidates") {
  // c = √(sin u + q) equals |s| = √(q+1) only where sin u = 1, a touching root with c' = 0
  const auto spec = CoefficientSpec::sqrt_sin(4);
  const auto c = nvw::glue_candidates(spec, std::sqrt(5.0), 0.0, 2 * pi);
  REQUIRE(c.size() == 1);
  CHECK(c[0].u_star == Approx(pi / 2).epsilon(1e-6));
  CHECK(c[0].degenerate);
}

TEST_CASE("candidate errors") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  CHECK(code_of([&] { nvw::glue_candidates(spec, 3.0, 0, 7); }) == ErrorCode::NoCandidates);
  CHECK(code_of([&] { nvw::glue_candidates(CoefficientSpec::lc_director(1, 1), 1.0, 0, 7); }) ==
        ErrorCode::DegenerateEverywhere);
  CHECK(code_of([&] { nvw::glue_candidates(spec, 2.0, 1, 1); }) == ErrorCode::InvalidInput);
}

TEST_CASE("segment_between validation") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  CHECK(code_of([&] { nvw::segment_between(spec, 2.0, 1.0, 0.0, 2 * pi, Orientation::Increasing); }) ==
        ErrorCode::SignViolation);
  CHECK(code_of([&] { nvw::segment_between(spec, 2.0, 1.0, 0.0, pi, Orientation::Decreasing); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([&] { nvw::segment_between(spec, 2.0, 0.0, 0.0, pi, Orientation::Increasing); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([&] { nvw::segment_between(spec, std::sqrt(5.0), 1.0, 0.0, 1.0, Orientation::Increasing); }) ==
        ErrorCode::InvalidInput);
  // k carries the sign of s² - c²
  const auto seg = nvw::segment_between(spec, 2.0, 1.0, 0.0, pi, Orientation::Increasing);
  CHECK(std::get<NvwConstants>(seg.constants()).k == -1.0);
  const auto neg = nvw::segment_between(spec, 2.0, 1.0, pi, 2 * pi, Orientation::Increasing);
  CHECK(std::get<NvwConstants>(neg.constants()).k == 1.0);
  CHECK(seg.endpoint_lo().flag == EndpointFlag::SingularDerivative);
  CHECK(seg.endpoint_hi().flag == EndpointFlag::SingularDerivative);
}

TEST_CASE("segment length matches the closed form") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  for (double k : {1.0, 4.0, 0.25}) {
    const auto seg = nvw::segment_between(spec, 2.0, k, 0.0, pi, Orientation::Increasing);
    CHECK(seg.length_total() == Approx(2 * oracle::sqrt_sin_quarter() / std::sqrt(k)).epsilon(1e-10));
  }
}

TEST_CASE("first integral is constant on segments") {
  const auto sq = CoefficientSpec::sqrt_sin(4);
  const auto lc = CoefficientSpec::lc_director(4, 1);
  const double u1 = std::asin(std::sqrt(5.0 / 12.0));
  const auto ar = CoefficientSpec::arctan_linear(1, 3);
  const std::vector<std::tuple<const CoefficientSpec*, double, double, double, double>> cases = {
      {&sq, 2.0, 1.0, 0.0, pi},       {&sq, 2.0, 3.0, pi, 2 * pi},   {&sq, 2.0, 0.5, 0.3, 2.0},
      {&lc, 1.5, 1.0, u1, pi - u1},   {&lc, 1.5, 2.0, -u1, u1},      {&ar, 2.5, 1.0, 1.0, 5.0},
      {&ar, 2.5, 0.7, -3.0, 1.0}};
  for (const auto& [spec, s, k, lo, hi] : cases) {
    const auto seg = nvw::segment_between(*spec, s, k, lo, hi, Orientation::Increasing);
    CHECK(nvw_invariant_residual(seg, *spec, s, 1000) <= 1e-6);
    const auto dn = nvw::segment_between(*spec, s, k, hi, lo, Orientation::Decreasing);
    CHECK(nvw_invariant_residual(dn, *spec, s, 1000) <= 1e-6);
  }
}

TEST_CASE("glue verdicts") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  const double s = 2.0;
  const auto up = nvw::segment_between(spec, s, 1.0, 0.0, pi, Orientation::Increasing);
  const auto dn = nvw::segment_between(spec, s, 4.0, pi, 0.0, Orientation::Decreasing);
  // a cusp at c = |s| is admissible for any pair of k
  auto v = nvw::check_glue_nvw(nvw::side_of(up, true), nvw::side_of(dn, false), pi, spec, s);
  CHECK(v.admissible);
  CHECK(v.kind == GlueKind::Cusp);

  const auto a = nvw::segment_between(spec, s, 1.0, 0.0, pi / 2, Orientation::Increasing);
  const auto b1 = nvw::segment_between(spec, s, 1.0, pi / 2, pi, Orientation::Increasing);
  const auto b4 = nvw::segment_between(spec, s, 4.0, pi / 2, pi, Orientation::Increasing);
  v = nvw::check_glue_nvw(nvw::side_of(a, true), nvw::side_of(b1, false), pi / 2, spec, s);
  CHECK(v.admissible);
  CHECK(v.kind == GlueKind::SmoothC1);
  v = nvw::check_glue_nvw(nvw::side_of(a, true), nvw::side_of(b4, false), pi / 2, spec, s);
  CHECK_FALSE(v.admissible);
  CHECK(v.reason == "KMismatch");

  const auto back = nvw::segment_between(spec, s, 1.0, pi / 2, 0.0, Orientation::Decreasing);
  v = nvw::check_glue_nvw(nvw::side_of(a, true), nvw::side_of(back, false), pi / 2, spec, s);
  CHECK_FALSE(v.admissible);

  nvw::GlueSide c{true, 0.0, pi / 2, Slope::finite(0)};
  v = nvw::check_glue_nvw(c, nvw::side_of(b1, false), pi / 2, spec, s);
  CHECK_FALSE(v.admissible);
}

TEST_CASE("plan JSON round trip and schema") {
  nvw::Plan p;
  p.pieces = {flat(pi), mono(1, pi, 0), flat(0, 3.0)};
  p.xi0 = 0.5;
  const auto j = nvw::plan_to_json(p);
  const auto q = nvw::plan_from_json(j);
  CHECK(nvw::plan_to_json(q) == j);
  auto bad = j;
  bad["pieces"][1]["extra"] = 1;
  CHECK(code_of([&] { nvw::plan_from_json(bad); }) == ErrorCode::InvalidInput);
  bad = j;
  bad["colour"] = "red";
  CHECK(code_of([&] { nvw::plan_from_json(bad); }) == ErrorCode::InvalidInput);
}

TEST_CASE("assembly places junctions and rejects bad plans") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  nvw::Plan p;
  p.pieces = {flat(pi), mono(1, pi, 0), flat(0)};
  p.xi0 = 1.0;
  const Profile prof = nvw::assemble_nvw(spec, 2.0, p);
  REQUIRE(prof.breakpoints.size() == 2);
  CHECK(prof.breakpoints[0].xi_star == 1.0);
  CHECK(prof.breakpoints[1].xi_star == Approx(1.0 + 2 * oracle::sqrt_sin_quarter()).epsilon(1e-10));
  CHECK(std::isinf(prof.xi_lo()));
  CHECK(std::isinf(prof.xi_hi()));

  nvw::Plan gap;
  gap.pieces = {flat(pi), mono(1, 3.0, 0)};
  CHECK(code_of([&] { nvw::assemble_nvw(spec, 2.0, gap); }) == ErrorCode::InadmissiblePlan);

  nvw::Plan mis;
  mis.pieces = {mono(1, 0, pi / 2), mono(4, pi / 2, pi)};
  try {
    nvw::assemble_nvw(spec, 2.0, mis);
    FAIL("expected InadmissiblePlan");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InadmissiblePlan);
    CHECK(e.junction() == 0);
  }
  const Profile unchecked = nvw::assemble_nvw(spec, 2.0, mis, {}, false);
  CHECK_FALSE(unchecked.admissible());
  CHECK(unchecked.breakpoints[0].verdict.reason == "KMismatch");

  nvw::Plan empty;
  CHECK(code_of([&] { nvw::assemble_nvw(spec, 2.0, empty); }) == ErrorCode::InvalidInput);
  nvw::Plan mid;
  mid.pieces = {mono(1, 0, pi), flat(pi), mono(1, pi, 0)};
  CHECK(code_of([&] { nvw::assemble_nvw(spec, 2.0, mid); }) == ErrorCode::InvalidInput);
}

TEST_CASE("wxi_l2 matches the w-integral oracle") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  const double s = 2.0;
  for (double k : {1.0, 2.0}) {
    const auto seg = nvw::segment_between(spec, s, k, 0.0, pi, Orientation::Increasing);
    // ∫ w_ξ² dξ = ∫ |w_ξ| dw = ∫ √|k| / √|s² - c²| dw
    for (auto [w1, w2] : {std::pair{0.0, pi}, std::pair{0.2, 1.0}, std::pair{1.0, pi}}) {
      // sin measured from the root at pi when the upper end sits on it
      auto f = [&, w2 = w2](double w, double wc) {
        const double sn = (w2 == pi && wc > 0) ? std::sin(wc) : std::sin(w);
        return std::sqrt(k) / std::sqrt(sn);
      };
      CHECK(nvw::wxi_l2(seg, spec, s, w1, w2) == Approx(oracle::tanh_sinh_c(f, w1, w2)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Holder exponent at NVW singular junctions is two thirds") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  nvw::Plan p;
  p.pieces = {mono(1, 0, pi), mono(1, pi, 0)};
  const Profile cusp = nvw::assemble_nvw(spec, 2.0, p);
  CHECK(nvw::holder_exponent(cusp, cusp.breakpoints[0].xi_star) == Approx(2.0 / 3.0).epsilon(0.03));
  nvw::Plan q;
  q.pieces = {flat(pi), mono(1, pi, 0), flat(0)};
  const Profile intro = nvw::assemble_nvw(spec, 2.0, q);
  for (const auto& g : intro.breakpoints)
    CHECK(nvw::holder_exponent(intro, g.xi_star) == Approx(2.0 / 3.0).epsilon(0.03));
}

TEST_CASE("Holder exponent of a smooth junction is one") {
  const auto spec = CoefficientSpec::sqrt_sin(4);
  nvw::Plan p;
  p.pieces = {mono(1, 0.0, pi / 2), mono(1, pi / 2, pi)};
  const Profile prof = nvw::assemble_nvw(spec, 2.0, p);
  CHECK(nvw::holder_exponent(prof, prof.breakpoints[0].xi_star) == Approx(1.0).epsilon(0.03));
}

TEST_CASE("profile half-length bounds for k in a range") {
  for (double q : {1.5, 4.0, 9.0}) {
    const auto spec = CoefficientSpec::sqrt_sin(q);
    const double s = std::sqrt(q);
    for (double k : {0.5, 1.0, 3.0}) {
      const auto seg = nvw::segment_between(spec, s, k, pi, 0.0, Orientation::Decreasing);
      const double half = seg.length_total() / 2;
      CHECK(half >= 1 / std::sqrt(k));
      CHECK(half <= pi / (2 * std::sqrt(k)));
    }
  }
}
