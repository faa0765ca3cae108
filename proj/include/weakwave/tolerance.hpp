#pragma once

#include <string>

namespace weakwave {

struct Tolerances {
  double root_tol = 1e-12;
  double quad_abs_tol = 1e-10;
  double invariant_rel_tol = 1e-6;
  double degenerate_cprime_tol = 1e-8;
  double glue_value_tol = 1e-9;
  double tail_cutoff_epsilon = 1e-8;

  // Throws InvalidInput unless every field is finite and strictly positive.
  void validate() const;
  // Sets a field by its name; unknown names throw InvalidInput.
  void set(const std::string& key, double value);
  double get(const std::string& key) const;
};

}  // namespace weakwave
