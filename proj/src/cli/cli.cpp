#include "weakwave/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "weakwave/error.hpp"
#include "weakwave/nvw.hpp"
#include "weakwave/serialize.hpp"

namespace weakwave::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, what + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw Error(ErrorCode::InvalidInput, "unknown key in " + what + ": " + it.key());
  }
}

double num(const json& j, const std::string& what) {
  try {
    return number_from_json(j);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidInput, what + " must be a number");
  }
}

constexpr ch::Kind kAllKinds[] = {
    ch::Kind::NoBoundedWave,     ch::Kind::CusponWithDecay, ch::Kind::PeakonWithDecay,
    ch::Kind::PeriodicCuspon,    ch::Kind::PeriodicPeakon,  ch::Kind::StumponCompatible,
    ch::Kind::MirrorCase,        ch::Kind::UnclassifiedBoundedDerivative,
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InadmissiblePlan:
    case ErrorCode::NoCandidates: return kNegative;
    case ErrorCode::QuadratureFailure:
    case ErrorCode::NumericalFailure: return kNumericalFailure;
    default: return kInputError;
  }
}

std::vector<double> axis(const json& j, const std::string& what) {
  std::vector<double> v;
  if (j.is_array()) {
    for (const auto& x : j) v.push_back(num(x, what));
  } else if (j.is_object()) {
    only_keys(j, {"lo", "hi", "n"}, what);
    const double lo = num(j.at("lo"), what), hi = num(j.at("hi"), what);
    const int n = j.at("n").get<int>();
    if (n < 0) throw Error(ErrorCode::InvalidInput, what + ".n must be non-negative");
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  } else {
    v.push_back(num(j, what));
  }
  return v;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + p.string());
  f << text;
}

void setup_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("wavectl");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("WAVECTL_LOG");
  const std::string lvl = env ? env : "error";
  if (lvl == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (lvl == "info")
    spdlog::set_level(spdlog::level::info);
  else
    spdlog::set_level(spdlog::level::err);
}

}  // namespace

ch::Kind kind_from_string(const std::string& s) {
  for (ch::Kind k : kAllKinds)
    if (s == ch::to_string(k)) return k;
  throw Error(ErrorCode::InvalidInput, "unknown kind: " + s);
}

JobSpec parse_jobspec(const json& j) {
  only_keys(j,
            {"equation", "s", "wave_speed", "coefficient", "a", "b", "plan", "kind", "window",
             "plateau_length", "u_range", "tolerances", "verify_threshold", "output", "sweep"},
            "jobspec");
  JobSpec job;
  if (!j.contains("equation") || !j["equation"].is_string())
    throw Error(ErrorCode::InvalidInput, "jobspec needs \"equation\": \"nvw\" | \"ch\"");
  const std::string eq = j["equation"].get<std::string>();
  if (eq == "nvw")
    job.equation = Equation::Nvw;
  else if (eq == "ch")
    job.equation = Equation::Ch;
  else
    throw Error(ErrorCode::InvalidInput, "unknown equation: " + eq);
  if (j.contains("s") && j.contains("wave_speed"))
    throw Error(ErrorCode::InvalidInput, "give either s or wave_speed");
  if (j.contains("s")) job.s = num(j["s"], "s");
  if (j.contains("wave_speed")) job.s = num(j["wave_speed"], "wave_speed");
  if (job.s && !std::isfinite(*job.s)) throw Error(ErrorCode::InvalidInput, "s must be finite");

  if (job.equation == Equation::Nvw) {
    for (const char* k : {"a", "b", "kind", "window", "plateau_length"})
      if (j.contains(k)) throw Error(ErrorCode::InvalidInput, std::string("key not valid for nvw: ") + k);
    if (j.contains("coefficient")) job.coefficient = coefficient_from_json(j["coefficient"]);
  } else {
    for (const char* k : {"coefficient", "u_range"})
      if (j.contains(k)) throw Error(ErrorCode::InvalidInput, std::string("key not valid for ch: ") + k);
    if (j.contains("a")) job.a = num(j["a"], "a");
    if (j.contains("b")) job.b = num(j["b"], "b");
    if (j.contains("kind")) job.kind = kind_from_string(j["kind"].get<std::string>());
    if (j.contains("window")) {
      only_keys(j["window"], {"lo", "hi"}, "window");
      job.build.window.lo = num(j["window"].at("lo"), "window.lo");
      job.build.window.hi = num(j["window"].at("hi"), "window.hi");
      if (!(job.build.window.lo < job.build.window.hi))
        throw Error(ErrorCode::InvalidInput, "window needs lo < hi");
    }
    if (j.contains("plateau_length")) {
      job.build.plateau_length = num(j["plateau_length"], "plateau_length");
      if (!(job.build.plateau_length > 0)) throw Error(ErrorCode::InvalidInput, "plateau_length must be positive");
    }
  }
  if (j.contains("u_range")) {
    const auto& u = j["u_range"];
    if (!u.is_array() || u.size() != 2) throw Error(ErrorCode::InvalidInput, "u_range must be [lo, hi]");
    job.u_range = {num(u[0], "u_range"), num(u[1], "u_range")};
  }
  if (j.contains("plan")) {
    job.plan = j["plan"];
    if (job.equation == Equation::Nvw)
      (void)nvw::plan_from_json(*job.plan);
    else
      (void)ch::plan_from_json(*job.plan);
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) throw Error(ErrorCode::InvalidInput, "tolerances must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) job.tol.set(it.key(), num(it.value(), it.key()));
  }
  if (j.contains("verify_threshold")) {
    job.verify_threshold = num(j["verify_threshold"], "verify_threshold");
    if (!(job.verify_threshold > 0)) throw Error(ErrorCode::InvalidInput, "verify_threshold must be positive");
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    only_keys(o, {"format", "path", "grid"}, "output");
    if (o.contains("format")) {
      job.output.format = o["format"].get<std::string>();
      if (job.output.format != "csv" && job.output.format != "json")
        throw Error(ErrorCode::InvalidInput, "output.format must be csv or json");
    }
    if (o.contains("path")) job.output.path = o["path"].get<std::string>();
    if (o.contains("grid")) {
      const auto& g = o["grid"];
      only_keys(g, {"xi_lo", "xi_hi", "n"}, "output.grid");
      Grid gr{num(g.at("xi_lo"), "grid.xi_lo"), num(g.at("xi_hi"), "grid.xi_hi"), g.at("n").get<int>()};
      if (!(gr.xi_lo <= gr.xi_hi) || gr.n < 1) throw Error(ErrorCode::InvalidInput, "bad output.grid");
      job.output.grid = gr;
    }
  }
  if (j.contains("sweep")) {
    if (!j["sweep"].is_object()) throw Error(ErrorCode::InvalidInput, "sweep must be an object");
    job.sweep = j["sweep"];
  }
  job.tol.validate();
  return job;
}

namespace {

double need_s(const JobSpec& job) {
  if (!job.s) throw Error(ErrorCode::InvalidInput, "jobspec needs s");
  return *job.s;
}

const CoefficientSpec& need_coefficient(const JobSpec& job) {
  if (!job.coefficient) throw Error(ErrorCode::InvalidInput, "nvw jobspec needs a coefficient");
  return *job.coefficient;
}

std::pair<double, double> default_u_range(const CoefficientSpec& c) {
  if (c.family() == Family::TabulatedSpline) return {c.nodes().front().first, c.nodes().back().first};
  return {0.0, 2.0 * std::numbers::pi};
}

json nvw_classify(const CoefficientSpec& c, double s, std::pair<double, double> u, const Tolerances& tol) {
  json out;
  out["equation"] = "nvw";
  out["regime"] = to_json(nvw::speed_regime(c, s, tol));
  out["u_range"] = {u.first, u.second};
  json cands = json::array();
  try {
    for (const auto& g : nvw::glue_candidates(c, s, u.first, u.second, 10000, tol)) cands.push_back(to_json(g));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCandidates) throw;
  }
  out["candidates"] = cands;
  return out;
}

}  // namespace

json classify_report(const JobSpec& job) {
  const double s = need_s(job);
  if (job.equation == Equation::Nvw) {
    const auto& c = need_coefficient(job);
    return nvw_classify(c, s, job.u_range.value_or(default_u_range(c)), job.tol);
  }
  if (!job.a || !job.b) throw Error(ErrorCode::InvalidInput, "ch jobspec needs a and b");
  return to_json(ch::classify_ch(s, *job.a, *job.b));
}

Profile build_profile(const JobSpec& job, bool checked) {
  const double s = need_s(job);
  if (job.equation == Equation::Nvw) {
    if (!job.plan) throw Error(ErrorCode::InvalidInput, "nvw build needs a plan");
    return nvw::assemble_nvw(need_coefficient(job), s, nvw::plan_from_json(*job.plan), job.tol, checked);
  }
  if (job.plan) return ch::assemble_ch(s, ch::plan_from_json(*job.plan), job.tol, checked);
  if (!job.a || !job.b) throw Error(ErrorCode::InvalidInput, "ch build needs a plan or (a, b)");
  return ch::build_ch_profile(s, *job.a, *job.b, job.kind, job.build, job.tol);
}

std::vector<SampleRow> sample_profile(const JobSpec& job, const Profile& p) {
  Grid g;
  if (job.output.grid) {
    g = *job.output.grid;
  } else {
    double lo = p.xi_lo(), hi = p.xi_hi();
    const double first = p.breakpoints.empty() ? 0.0 : p.breakpoints.front().xi_star;
    const double last = p.breakpoints.empty() ? 0.0 : p.breakpoints.back().xi_star;
    if (!std::isfinite(lo)) lo = first - 5.0;
    if (!std::isfinite(hi)) hi = last + 5.0;
    g = {lo, hi, 1001};
  }
  std::vector<double> xs(g.n);
  for (int i = 0; i < g.n; ++i) xs[i] = g.n == 1 ? g.xi_lo : g.xi_lo + (g.xi_hi - g.xi_lo) * i / (g.n - 1);
  return profile_sample(p, xs);
}

verify::ResidualReport verify_profile(const Profile& p, int bumps, std::uint64_t seed) {
  verify::SuiteOptions opt;
  opt.n_bumps = bumps;
  opt.seed = seed;
  return verify::residual_suite(p, opt, p.tol);
}

json sweep_table(const JobSpec& job, int jobs, std::uint64_t seed) {
  if (!job.sweep) throw Error(ErrorCode::InvalidInput, "sweep command needs a \"sweep\" object");
  const json& sw = *job.sweep;
  struct Row {
    std::vector<double> params;
  };
  std::vector<std::string> names;
  std::vector<Row> rows;

  if (job.equation == Equation::Ch) {
    names = {"s", "a", "b"};
    if (sw.contains("random")) {
      only_keys(sw, {"random"}, "sweep");
      const auto& r = sw["random"];
      only_keys(r, {"n", "s", "a", "b"}, "sweep.random");
      const int n = r.at("n").get<int>();
      if (n < 0) throw Error(ErrorCode::InvalidInput, "sweep.random.n must be non-negative");
      std::array<std::pair<double, double>, 3> box;
      for (int k = 0; k < 3; ++k) {
        const auto& iv = r.at(names[k]);
        if (!iv.is_array() || iv.size() != 2) throw Error(ErrorCode::InvalidInput, "sweep.random ranges are [lo, hi]");
        box[k] = {num(iv[0], names[k]), num(iv[1], names[k])};
      }
      std::mt19937_64 rng(seed);
      for (int i = 0; i < n; ++i) {
        Row row;
        for (int k = 0; k < 3; ++k) {
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          row.params.push_back(box[k].first + (box[k].second - box[k].first) * u);
        }
        rows.push_back(row);
      }
    } else {
      only_keys(sw, {"s", "a", "b"}, "sweep");
      const auto S = sw.contains("s") ? axis(sw["s"], "s") : std::vector<double>{need_s(job)};
      const auto A = sw.contains("a") ? axis(sw["a"], "a") : (job.a ? std::vector<double>{*job.a} : std::vector<double>{});
      const auto B = sw.contains("b") ? axis(sw["b"], "b") : (job.b ? std::vector<double>{*job.b} : std::vector<double>{});
      for (double s : S)
        for (double a : A)
          for (double b : B) rows.push_back({{s, a, b}});
    }
  } else {
    const auto& c = need_coefficient(job);
    std::vector<std::string> pnames;
    switch (c.family()) {
      case Family::SqrtSin: pnames = {"q"}; break;
      case Family::ArctanLinear: pnames = {"alpha", "beta"}; break;
      case Family::LcDirector: pnames = {"lambda1", "lambda2"}; break;
      case Family::TabulatedSpline: break;
    }
    names = {"s"};
    names.insert(names.end(), pnames.begin(), pnames.end());
    for (auto it = sw.begin(); it != sw.end(); ++it)
      if (std::find(names.begin(), names.end(), it.key()) == names.end())
        throw Error(ErrorCode::InvalidInput, "unknown key in sweep: " + it.key());
    std::vector<std::vector<double>> axes;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (sw.contains(names[k]))
        axes.push_back(axis(sw[names[k]], names[k]));
      else
        axes.push_back({k == 0 ? need_s(job) : c.params()[k - 1]});
    }
    std::vector<std::size_t> idx(axes.size(), 0);
    bool any_empty = false;
    for (const auto& ax : axes) any_empty = any_empty || ax.empty();
    while (!any_empty) {
      Row row;
      for (std::size_t k = 0; k < axes.size(); ++k) row.params.push_back(axes[k][idx[k]]);
      rows.push_back(row);
      std::size_t k = axes.size();
      while (k > 0) {
        --k;
        if (++idx[k] < axes[k].size()) break;
        idx[k] = 0;
        if (k == 0) any_empty = true;
      }
      if (axes.size() == 0) break;
    }
  }

  std::vector<json> out(rows.size());
  auto work = [&](std::size_t i) {
    const auto& p = rows[i].params;
    json r = json::object();
    for (std::size_t k = 0; k < names.size(); ++k) r[names[k]] = p[k];
    try {
      if (job.equation == Equation::Ch) {
        r["kind"] = ch::to_string(ch::classify_ch(p[0], p[1], p[2]).kind);
      } else {
        CoefficientSpec c = *job.coefficient;
        switch (c.family()) {
          case Family::SqrtSin: c = CoefficientSpec::sqrt_sin(p[1]); break;
          case Family::ArctanLinear: c = CoefficientSpec::arctan_linear(p[1], p[2]); break;
          case Family::LcDirector: c = CoefficientSpec::lc_director(p[1], p[2]); break;
          case Family::TabulatedSpline: break;
        }
        const json rep = nvw_classify(c, p[0], job.u_range.value_or(default_u_range(c)), job.tol);
        r["regime"] = rep["regime"]["regime"];
        r["candidates"] = rep["candidates"].size();
      }
    } catch (const Error& e) {
      r["error"] = to_string(e.code());
      r["message"] = e.what();
    }
    out[i] = std::move(r);
  };
  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) work(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json table = json::array();
  for (auto& r : out) table.push_back(std::move(r));
  return {{"equation", to_string(job.equation)}, {"rows", table}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  setup_logging();
  CLI::App app{"weak traveling waves: classify, build, verify, sweep", "wavectl"};
  app.require_subcommand(1, 1);
  std::string spec_path, out_dir, profile_path;
  int bumps = 16, jobs = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> tol_overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "JobSpec JSON file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--tol", tol_overrides, "tolerance override KEY=VAL");
  };
  auto* c_classify = app.add_subcommand("classify", "classify the wave speed / cubic");
  auto* c_build = app.add_subcommand("build", "build a profile and export it");
  auto* c_verify = app.add_subcommand("verify", "weak-form residual report");
  auto* c_sweep = app.add_subcommand("sweep", "classification table over parameter ranges");
  for (auto* s : {c_classify, c_build, c_verify, c_sweep}) add_common(s);
  c_verify->add_option("--bumps", bumps, "number of test functions")->check(CLI::NonNegativeNumber);
  c_verify->add_option("--profile", profile_path, "profile JSON to verify instead of building");
  c_sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    std::ifstream f(spec_path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot read " + spec_path);
    json raw;
    try {
      raw = json::parse(f);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
    }
    JobSpec job = parse_jobspec(raw);
    for (const auto& kv : tol_overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidInput, "--tol expects KEY=VAL");
      double v;
      try {
        std::size_t used = 0;
        v = std::stod(kv.substr(eq + 1), &used);
        if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "--tol value is not a number: " + kv);
      }
      job.tol.set(kv.substr(0, eq), v);
    }
    job.tol.validate();
    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path{} : std::filesystem::path(out_dir);
    auto target = [&](const std::string& name) -> std::optional<std::filesystem::path> {
      if (job.output.path) return dir / *job.output.path;
      if (!out_dir.empty()) return dir / name;
      return std::nullopt;
    };

    if (c_classify->parsed()) {
      spdlog::info("classify {}", to_string(job.equation));
      const std::string text = classify_report(job).dump(2) + "\n";
      out << text;
      if (auto p = target("classify.json")) write_file(*p, text);
      return kOk;
    }
    if (c_build->parsed()) {
      spdlog::info("build {}", to_string(job.equation));
      const Profile prof = build_profile(job, true);
      const std::string pj = to_json(prof).dump(2) + "\n";
      json summary = {{"admissible", prof.admissible()},
                      {"segments", prof.segments.size()},
                      {"breakpoints", prof.breakpoints.size()},
                      {"xi_lo", number_json(prof.xi_lo())},
                      {"xi_hi", number_json(prof.xi_hi())}};
      json files = json::array();
      const auto rows = sample_profile(job, prof);
      if (job.output.format == "csv") {
        std::ostringstream csv;
        write_csv(csv, rows);
        if (auto p = target("profile.csv")) {
          write_file(*p, csv.str());
          files.push_back(p->string());
        }
        if (!out_dir.empty()) {
          write_file(dir / "profile.json", pj);
          files.push_back((dir / "profile.json").string());
        }
      } else if (auto p = target("profile.json")) {
        write_file(*p, pj);
        files.push_back(p->string());
      }
      summary["files"] = files;
      if (files.empty()) summary["profile"] = to_json(prof);
      out << summary.dump(2) << "\n";
      return kOk;
    }
    if (c_verify->parsed()) {
      Profile prof;
      if (!profile_path.empty()) {
        std::ifstream pf(profile_path);
        if (!pf) throw Error(ErrorCode::InvalidInput, "cannot read " + profile_path);
        json pj;
        try {
          pj = json::parse(pf);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::InvalidInput, std::string("bad profile JSON: ") + e.what());
        }
        prof = profile_from_json(pj);
      } else {
        prof = build_profile(job, false);
      }
      spdlog::info("verify with {} bumps, seed {}", bumps, seed);
      const auto rep = verify_profile(prof, bumps, seed);
      const bool pass = rep.max_normalized <= job.verify_threshold && rep.all_junctions_admissible;
      json j = to_json(rep);
      j["threshold"] = job.verify_threshold;
      j["verdict"] = pass ? "admissible" : "inadmissible";
      const std::string text = j.dump(2) + "\n";
      if (auto p = target("report.json"))
        write_file(*p, text);
      out << text;
      for (const auto& jm : rep.jumps)
        if (!jm.admissible) spdlog::info("junction {} {}", jm.index, jm.reason);
      return pass ? kOk : kNegative;
    }
    if (c_sweep->parsed()) {
      spdlog::info("sweep with {} jobs", jobs);
      const std::string text = sweep_table(job, jobs, seed).dump(2) + "\n";
      out << text;
      if (auto p = target("sweep.json")) write_file(*p, text);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: InvalidInput: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: InvalidInput: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace weakwave::cli
