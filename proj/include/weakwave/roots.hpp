#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace weakwave::roots {

// Bisection on a bracket [a, b] with f(a)·f(b) <= 0.
double bisect(const std::function<double(double)>& f, double a, double b, double tol);

// Golden-section search for a local minimum of f on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol);

struct Bracket {
  double lo, hi;
};

// Sign changes (and exact zeros) of f sampled on n+1 uniform points.
std::vector<Bracket> scan_sign_changes(const std::function<double(double)>& f, double a, double b,
                                       int n);

}  // namespace weakwave::roots
