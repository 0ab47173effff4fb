#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.
// Panels are refined worst-first until the summed |K15 - G7| estimate drops
// below max(abs_tol, rel_tol * |integral|).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace mspace::quad {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  std::size_t max_panels = 1'000'000;
};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<Panel<T>> panels;
};

template <class T, class F>
Panel<T> kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T kronrod = f(center) * kKronrodWeights[7];
  T gauss = f(center) * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  Panel<T> p{a, b, kronrod * half, 0.0};
  p.error = std::abs((kronrod - gauss) * half);
  return p;
}

/// Integrate f over the union of consecutive panels [breaks[i], breaks[i+1]].
template <class T, class F>
Result<T> integrate(F&& f, std::span<const double> breaks, const Options& opts = {}) {
  Result<T> out;
  if (breaks.size() < 2) {
    out.converged = true;
    return out;
  }
  auto worse = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(worse)> heap(worse);

  T total{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto p = kronrod15<T>(f, breaks[i], breaks[i + 1]);
    out.evaluations += 15;
    total += p.value;
    err += p.error;
    heap.push(p);
  }

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (!heap.empty() && err > target() && heap.size() < opts.max_panels) {
    Panel<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    auto left = kronrod15<T>(f, worst.a, mid);
    auto right = kronrod15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels to shed accumulated update roundoff.
  out.panels.reserve(heap.size());
  total = T{};
  err = 0.0;
  while (!heap.empty()) {
    out.panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(out.panels.begin(), out.panels.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  for (const auto& p : out.panels) {
    total += p.value;
    err += p.error;
  }
  out.value = total;
  out.error = err;
  out.converged = err <= target();
  return out;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Options& opts = {}) {
  const std::array<double, 2> breaks{a, b};
  return integrate<T>(std::forward<F>(f), std::span<const double>(breaks), opts);
}

/// Uniform breakpoints lo, lo + h, ..., hi (the last panel may be shorter).
inline std::vector<double> uniform_breaks(double lo, double hi, double h) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * h);
  out.push_back(hi);
  return out;
}

}  // namespace mspace::quad
