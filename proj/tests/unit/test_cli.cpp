#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "weakwave/cli.hpp"
#include "weakwave/serialize.hpp"

using namespace weakwave;
using nlohmann::json;

namespace {

const std::string data = WEAKWAVE_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run wavectl(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

json load(const std::string& path) {
  std::ifstream f(path);
  return json::parse(f);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("weakwave_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("classify output is the serialized library call") {
  for (const char* f : {"peakon_ch.json", "nobounded_ch.json", "stumpon_ch.json", "classify_nvw.json"}) {
    const auto r = wavectl({"classify", "--spec", data + "/" + f});
    CHECK(r.code == 0);
    const auto job = cli::parse_jobspec(load(data + "/" + f));
    CHECK(r.out == cli::classify_report(job).dump(2) + "\n");
  }
  CHECK(json::parse(wavectl({"classify", "--spec", data + "/peakon_ch.json"}).out)["kind"] == "PeakonWithDecay");
  CHECK(json::parse(wavectl({"classify", "--spec", data + "/nobounded_ch.json"}).out)["kind"] == "NoBoundedWave");
  const auto nv = json::parse(wavectl({"classify", "--spec", data + "/classify_nvw.json"}).out);
  CHECK(nv["candidates"].size() == 3);
  CHECK(nv["regime"]["regime"] == "InteriorBand");
}

TEST_CASE("build writes the profile files") {
  const auto dir = scratch("build");
  const auto r = wavectl({"build", "--spec", data + "/intro_nvw.json", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto job = cli::parse_jobspec(load(data + "/intro_nvw.json"));
  const Profile p = cli::build_profile(job);
  CHECK(slurp(dir / "profile.json") == to_json(p).dump(2) + "\n");
  std::ostringstream csv;
  write_csv(csv, cli::sample_profile(job, p));
  const std::string text = slurp(dir / "profile.csv");
  CHECK(text == csv.str());
  CHECK(text.rfind("xi,w,slope,flag\n", 0) == 0);
  // two plateaus, pi then 0, joined by a decreasing part
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<double> w;
  int singular = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string xi, wv, slope, flag;
    std::getline(ss, xi, ',');
    std::getline(ss, wv, ',');
    std::getline(ss, slope, ',');
    std::getline(ss, flag, ',');
    w.push_back(std::stod(wv));
    if (flag == "singular") {
      ++singular;
      CHECK(std::stod(xi) == 0.0);
      CHECK(slope.empty());
    }
    CHECK(slope.find("inf") == std::string::npos);
  }
  CHECK(w.front() == doctest::Approx(3.141592653589793));
  CHECK(w.back() == 0.0);
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] <= w[i - 1]);
  // of the two junctions only xi = 0 falls on the 0.05 grid
  CHECK(singular == 1);
}

TEST_CASE("profile JSON reloads to the same profile") {
  const auto job = cli::parse_jobspec(load(data + "/stumpon_ch.json"));
  const Profile p = cli::build_profile(job);
  const Profile q = profile_from_json(to_json(p));
  CHECK(to_json(q) == to_json(p));
}

TEST_CASE("exit codes") {
  CHECK(wavectl({"build", "--spec", data + "/empty_plan.json"}).code == 2);
  CHECK(wavectl({"classify", "--spec", data + "/unknown_key.json"}).code == 2);
  CHECK(wavectl({"classify", "--spec", data + "/missing.json"}).code == 2);
  CHECK(wavectl({"classify"}).code == 2);
  CHECK(wavectl({"frobnicate", "--spec", data + "/peakon_ch.json"}).code == 2);
  CHECK(wavectl({"classify", "--spec", data + "/peakon_ch.json", "--tol", "bogus=1"}).code == 2);
  CHECK(wavectl({"classify", "--spec", data + "/peakon_ch.json", "--tol", "root_tol=-1"}).code == 2);
  const auto b = wavectl({"build", "--spec", data + "/k_mismatch_nvw.json"});
  CHECK(b.code == 1);
  CHECK(b.err.find("junction 0") != std::string::npos);
  CHECK(wavectl({"build", "--spec", data + "/stumpon_perturbed_ch.json"}).code == 1);
}

TEST_CASE("tolerance overrides are applied") {
  const auto r = wavectl({"verify", "--spec", data + "/peakon_ch.json", "--bumps", "2", "--tol", "quad_abs_tol=1e-8"});
  CHECK(r.code == 0);
}

TEST_CASE("verify verdicts") {
  auto r = wavectl({"verify", "--spec", data + "/peakon_ch.json", "--bumps", "16"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "admissible");
  r = wavectl({"verify", "--spec", data + "/a_mismatch_ch.json"});
  CHECK(r.code == 1);
  const auto rep = json::parse(r.out);
  CHECK(rep["jumps"][0]["reason"] == "AMismatch");
  r = wavectl({"verify", "--spec", data + "/cuspon_const_ch.json"});
  CHECK(r.code == 1);
  r = wavectl({"verify", "--spec", data + "/stumpon_ch.json"});
  CHECK(r.code == 0);

  const auto dir = scratch("verify");
  std::filesystem::create_directories(dir);
  const auto job = cli::parse_jobspec(load(data + "/stumpon_ch.json"));
  {
    std::ofstream f(dir / "p.json");
    f << to_json(cli::build_profile(job)).dump(2);
  }
  r = wavectl({"verify", "--spec", data + "/stumpon_ch.json", "--profile", (dir / "p.json").string()});
  CHECK(r.code == 0);
}

TEST_CASE("same seed gives identical verify bytes") {
  const auto d1 = scratch("seed1"), d2 = scratch("seed2");
  const auto a = wavectl({"verify", "--spec", data + "/intro_nvw.json", "--seed", "9", "--out", d1.string()});
  const auto b = wavectl({"verify", "--spec", data + "/intro_nvw.json", "--seed", "9", "--out", d2.string()});
  CHECK(a.out == b.out);
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
  const auto c = wavectl({"verify", "--spec", data + "/intro_nvw.json", "--seed", "10"});
  CHECK(c.out != a.out);
  const auto job = cli::parse_jobspec(load(data + "/intro_nvw.json"));
  auto lib = to_json(cli::verify_profile(cli::build_profile(job, false), 16, 9));
  lib["threshold"] = 1e-5;
  lib["verdict"] = "admissible";
  CHECK(a.out == lib.dump(2) + "\n");
}

TEST_CASE("sweep") {
  const auto r = wavectl({"sweep", "--spec", data + "/sweep_ch.json", "--jobs", "3"});
  REQUIRE(r.code == 0);
  const auto t = json::parse(r.out)["rows"];
  REQUIRE(t.size() == 3);
  CHECK(t[0]["kind"] == "NoBoundedWave");
  CHECK(t[1]["kind"] == "PeakonWithDecay");
  CHECK(t[2]["kind"] == "PeriodicCuspon");
  CHECK(wavectl({"sweep", "--spec", data + "/sweep_ch.json", "--jobs", "1"}).out == r.out);

  json job = {{"equation", "ch"}, {"s", 1}, {"sweep", {{"s", json::array()}, {"a", {0}}, {"b", {0}}}}};
  const auto empty = cli::sweep_table(cli::parse_jobspec(job), 2, 0);
  CHECK(empty["rows"].empty());

  json rnd = {{"equation", "ch"}, {"sweep", {{"random", {{"n", 50}, {"s", {-2, 2}}, {"a", {-2, 2}}, {"b", {-2, 2}}}}}}};
  const auto j = cli::parse_jobspec(rnd);
  CHECK(cli::sweep_table(j, 1, 4) == cli::sweep_table(j, 4, 4));
  CHECK(cli::sweep_table(j, 1, 4) != cli::sweep_table(j, 1, 5));

  json nv = {{"equation", "nvw"}, {"s", 2}, {"coefficient", {{"family", "SqrtSin"}, {"q", 4}}},
             {"sweep", {{"s", {1.5, 2, 3}}}}};
  const auto nt = cli::sweep_table(cli::parse_jobspec(nv), 2, 0)["rows"];
  REQUIRE(nt.size() == 3);
  CHECK(nt[0]["regime"] == "OutsideBand");
  CHECK(nt[0]["candidates"] == 0);
  CHECK(nt[1]["candidates"] == 3);
}

TEST_CASE("jobspec schema") {
  CHECK_THROWS(cli::parse_jobspec({{"equation", "kdv"}}));
  CHECK_THROWS(cli::parse_jobspec({{"equation", "ch"}, {"coefficient", {{"family", "SqrtSin"}, {"q", 4}}}}));
  CHECK_THROWS(cli::parse_jobspec({{"equation", "nvw"}, {"a", 1}}));
  CHECK_THROWS(cli::parse_jobspec({{"equation", "ch"}, {"output", {{"format", "xml"}}}}));
  CHECK_THROWS(cli::parse_jobspec({{"equation", "ch"}, {"output", {{"grid", {{"xi_lo", 1}, {"xi_hi", 0}, {"n", 3}}}}}}));
  CHECK_THROWS(cli::parse_jobspec({{"equation", "ch"}, {"tolerances", {{"root_tol", 0}}}}));
  CHECK_THROWS(cli::parse_jobspec({{"equation", "ch"}, {"plan", {{"a", 0}, {"pieces", {{{"type", "blob"}}}}}}}));
  const auto j = cli::parse_jobspec({{"equation", "ch"}, {"wave_speed", 1}, {"a", 0}, {"b", 0}});
  CHECK(*j.s == 1);
  CHECK(cli::kind_from_string("MirrorCase") == ch::Kind::MirrorCase);
  CHECK_THROWS(cli::kind_from_string("Soliton"));
}
