#include "weakwave/tolerance.hpp"

#include <cmath>

#include "weakwave/error.hpp"

namespace weakwave {

namespace {

double* field(Tolerances& t, const std::string& key) {
  if (key == "root_tol") return &t.root_tol;
  if (key == "quad_abs_tol") return &t.quad_abs_tol;
  if (key == "invariant_rel_tol") return &t.invariant_rel_tol;
  if (key == "degenerate_cprime_tol") return &t.degenerate_cprime_tol;
  if (key == "glue_value_tol") return &t.glue_value_tol;
  if (key == "tail_cutoff_epsilon") return &t.tail_cutoff_epsilon;
  throw Error(ErrorCode::InvalidInput, "unknown tolerance key: " + key);
}

}  // namespace

void Tolerances::validate() const {
  for (const char* key : {"root_tol", "quad_abs_tol", "invariant_rel_tol", "degenerate_cprime_tol",
                          "glue_value_tol", "tail_cutoff_epsilon"}) {
    const double v = get(key);
    if (!std::isfinite(v) || v <= 0.0)
      throw Error(ErrorCode::InvalidInput, std::string("tolerance must be positive: ") + key);
  }
}

void Tolerances::set(const std::string& key, double value) { *field(*this, key) = value; }

double Tolerances::get(const std::string& key) const {
  return *field(const_cast<Tolerances&>(*this), key);
}

}  // namespace weakwave
