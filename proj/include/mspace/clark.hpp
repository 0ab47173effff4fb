#pragma once

#include <utility>
#include <vector>

#include "mspace/inner_function.hpp"

namespace mspace {

/// Clark nodes x_n solving phi(x_n) = gamma + 2 pi n for n in
/// [n_min, n_max], with weights ||k_{x_n}||^2 = phi'(x_n) / (2 pi).
struct SamplingGrid {
  InnerFunction spec;
  double gamma = 0.0;
  long n_min = 0;
  long n_max = -1;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  long index_at(std::size_t i) const { return n_min + static_cast<long>(i); }
  /// Position in nodes of index n.
  std::size_t offset_of(long n) const { return static_cast<std::size_t>(n - n_min); }
  /// Index n of the node closest to x.
  long nearest_index(double x) const;
};

/// Solution of phi(x) = target for a spec with c > 0, certified to
/// |phi(x) - target| < 1e-10.
double invert_phase(const InnerFunction& spec, double target);

SamplingGrid solve_nodes(const InnerFunction& spec, double gamma, long n_min, long n_max,
                         unsigned threads = 1);

/// (min, max) spacing between consecutive nodes.
std::pair<double, double> node_spacing_bounds(const SamplingGrid& grid);

}  // namespace mspace
