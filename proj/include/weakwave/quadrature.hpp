#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace weakwave::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int cells = 0;
  bool converged = true;
};

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Four-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 4> kGL4Nodes = {-0.861136311594052575223946488892809,
                                                    -0.339981043584856264802665759103245,
                                                    0.339981043584856264802665759103245,
                                                    0.861136311594052575223946488892809};
inline constexpr std::array<double, 4> kGL4Weights = {0.347854845137453857373063949221999,
                                                      0.652145154862546142626936050778001,
                                                      0.652145154862546142626936050778001,
                                                      0.347854845137453857373063949221999};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

// Globally adaptive Gauss-Kronrod integration: bisects the panel with the
// largest error estimate until the summed estimate meets the tolerance.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                 int max_cells = 20000, int initial_cells = 1) {
  Result r;
  if (a == b) return r;
  std::priority_queue<Panel> heap;
  double total = 0.0, err = 0.0;
  const int n0 = initial_cells < 1 ? 1 : initial_cells;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    Panel p = gk15(f, lo, hi);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int cells = n0;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (cells >= max_cells) {
      r.converged = false;
      break;
    }
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      r.converged = false;
      break;
    }
    heap.pop();
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++cells;
  }
  // Re-sum to shed the drift of the incremental updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  r.value = total;
  r.error = err;
  r.cells = cells;
  return r;
}

}  // namespace weakwave::quad
