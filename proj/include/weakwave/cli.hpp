#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakwave/ch.hpp"
#include "weakwave/profile.hpp"
#include "weakwave/residual.hpp"

namespace weakwave::cli {

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kNumericalFailure = 3 };

struct Grid {
  double xi_lo = 0.0, xi_hi = 0.0;
  int n = 0;
};

struct OutputSpec {
  std::string format = "csv";
  std::optional<std::string> path;
  std::optional<Grid> grid;
};

struct JobSpec {
  Equation equation = Equation::Nvw;
  std::optional<double> s;
  std::optional<CoefficientSpec> coefficient;
  std::optional<double> a, b;
  std::optional<nlohmann::json> plan;
  std::optional<ch::Kind> kind;
  ch::BuildOptions build;
  std::optional<std::pair<double, double>> u_range;
  Tolerances tol;
  double verify_threshold = 1e-5;
  OutputSpec output;
  std::optional<nlohmann::json> sweep;
};

// Schema validation; unknown keys throw InvalidInput.
JobSpec parse_jobspec(const nlohmann::json& j);

nlohmann::json classify_report(const JobSpec& job);
Profile build_profile(const JobSpec& job, bool checked = true);
std::vector<SampleRow> sample_profile(const JobSpec& job, const Profile& p);
verify::ResidualReport verify_profile(const Profile& p, int bumps, std::uint64_t seed);
nlohmann::json sweep_table(const JobSpec& job, int jobs, std::uint64_t seed);

ch::Kind kind_from_string(const std::string& s);

// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weakwave::cli
