#include "mspace/clark.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mspace/errors.hpp"
#include "mspace/parallel.hpp"

namespace mspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResidualTol = 1e-10;

}  // namespace

double invert_phase(const InnerFunction& spec, double target) {
  const double c = spec.c();
  if (!(c > 0.0)) throw NoNodeError("invert_phase: requires exponential type c > 0");

  // tau + c x - 2 pi M < phi(x) < tau + c x, with M the number of zeros.
  const double x0 = (target - spec.tau()) / c;
  if (spec.zeros().empty()) {
    double x = x0;
    x -= (spec.phase(x).value - target) / c;
    return x;
  }
  const double spread = kTwoPi * spec.zero_count() / c;
  double lo = x0 - 1.0;
  double hi = x0 + spread + 1.0;
  auto residual = [&](double x) { return spec.phase(x).value - target; };
  if (residual(lo) > 0.0 || residual(hi) < 0.0) {
    std::ostringstream msg;
    msg << "invert_phase: bracket [" << lo << ", " << hi << "] does not enclose target " << target;
    throw ConvergenceError(msg.str());
  }
  while (hi - lo > 1e-13 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  const PhaseValue p = spec.phase(x);
  const double polished = x - (p.value - target) / p.derivative;
  if (std::abs(residual(polished)) <= std::abs(p.value - target)) x = polished;
  return x;
}

long SamplingGrid::nearest_index(double x) const {
  if (nodes.empty()) throw DomainError("nearest_index: empty grid");
  auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  std::size_t i = static_cast<std::size_t>(it - nodes.begin());
  if (i == nodes.size()) {
    i = nodes.size() - 1;
  } else if (i > 0 && x - nodes[i - 1] < nodes[i] - x) {
    --i;
  }
  return index_at(i);
}

SamplingGrid solve_nodes(const InnerFunction& spec, double gamma, long n_min, long n_max,
                         unsigned threads) {
  if (!(spec.c() > 0.0))
    throw NoNodeError(
        "solve_nodes: exponential type c must be > 0; with c = 0 only finitely many nodes exist");
  if (n_min > n_max) throw DomainError("solve_nodes: n_min > n_max");

  SamplingGrid grid;
  grid.spec = spec;
  grid.gamma = gamma;
  grid.n_min = n_min;
  grid.n_max = n_max;
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  grid.nodes.resize(count);
  grid.weights.resize(count);

  parallel_for(count, threads, [&](std::size_t i) {
    const double target = gamma + kTwoPi * static_cast<double>(n_min + static_cast<long>(i));
    const double x = invert_phase(spec, target);
    const PhaseValue p = spec.phase(x);
    if (!(std::abs(p.value - target) < kResidualTol)) {
      std::ostringstream msg;
      msg << "solve_nodes: residual " << std::abs(p.value - target) << " at n = "
          << n_min + static_cast<long>(i);
      throw ConvergenceError(msg.str());
    }
    grid.nodes[i] = x;
    grid.weights[i] = p.derivative / kTwoPi;
  });
  return grid;
}

std::pair<double, double> node_spacing_bounds(const SamplingGrid& grid) {
  if (grid.size() < 2) throw DomainError("node_spacing_bounds: need at least two nodes");
  double lo = grid.nodes[1] - grid.nodes[0];
  double hi = lo;
  for (std::size_t i = 2; i < grid.size(); ++i) {
    const double d = grid.nodes[i] - grid.nodes[i - 1];
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

}  // namespace mspace
