#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace weakwave {

enum class ErrorCode {
  InvalidInput,
  OutOfDomain,
  NoCandidates,
  DegenerateEverywhere,
  SignViolation,
  DegenerateEndpoint,
  InadmissiblePlan,
  DivergentIntegral,
  NotConstructible,
  ComplexSlope,
  UnsupportedOverlap,
  QuadratureFailure,
  NumericalFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> junction = std::nullopt)
      : std::runtime_error(what), code_(code), junction_(junction) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> junction() const noexcept { return junction_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> junction_;
};

}  // namespace weakwave
