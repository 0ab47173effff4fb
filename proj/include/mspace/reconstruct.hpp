#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mspace/clark.hpp"
#include "mspace/kernel.hpp"

namespace mspace {

enum class Method { kShannon, kPwOversample, kClark, kModelOversample };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// Which reconstruction formula to apply and how many terms to keep.
struct ReconstructionPlan {
  Method method = Method::kShannon;
  std::optional<SincKernelSpec> sinc_spec;  // pw_oversample only
  std::optional<int> m;                     // model_oversample only
  std::optional<double> over_c;             // model_oversample only
  long window = 1;                          // keep |n - n_center| <= window

  void validate() const;
};

/// Samples f(k * spacing) for k = first_index, first_index + 1, ...
struct UniformSamples {
  double spacing = 1.0;
  long first_index = 0;
  std::vector<cplx> values;

  double position(std::size_t i) const {
    return spacing * static_cast<double>(first_index + static_cast<long>(i));
  }
};

/// Clark-grid samples f(x_n).
struct SampleSet {
  SamplingGrid grid;
  std::vector<cplx> values;

  /// Nodes with |n - center| <= half_width, clipped to the grid.
  SampleSet window(long center, long half_width) const;
};

template <class F>
UniformSamples sample_uniform(F&& f, double spacing, long k_min, long k_max) {
  UniformSamples s{spacing, k_min, {}};
  s.values.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (long k = k_min; k <= k_max; ++k) s.values.push_back(f(spacing * static_cast<double>(k)));
  return s;
}

template <class F>
SampleSet sample_grid(F&& f, const SamplingGrid& grid) {
  SampleSet s{grid, {}};
  s.values.reserve(grid.size());
  for (double x : grid.nodes) s.values.push_back(f(x));
  return s;
}

/// sum_k f(k pi / b) sinc(b (x - k pi / b)).
cplx shannon_reconstruct(const UniformSamples& samples, double b, double x);

/// sum_k f(k pi / b) pw_oversample_kernel(k, x - k pi / b) with b = c + 2 N a.
cplx pw_oversample_reconstruct(const UniformSamples& samples, const SincKernelSpec& k, double x);

/// sum_n f(x_n) k_{x_n}(x) / ||k_{x_n}||^2; the term at x == x_n is f(x_n).
cplx clark_reconstruct(const SampleSet& samples, const InnerFunction& spec, double x);

/// Oversampled model-space formula: samples on the grid of Theta_c Theta,
/// terms damped by e^{-i c (x - x_n) / 2} sinc(c (x - x_n) / (2m))^m.
cplx model_oversample_reconstruct(const SampleSet& samples, const InnerFunction& base_spec,
                                  double over_c, int m, double x);

/// sqrt(sum_n |f(x_n)|^2 / ||k_{x_n}||^2).
double plancherel_norm(const SampleSet& samples);

struct DecayRow {
  long K = 0;
  double sup_error = 0.0;
  double l2_error = 0.0;
};

/// Least-squares slope of log(error) against log(K).
double fitted_log_slope(std::span<const DecayRow> rows, bool use_sup = true);

}  // namespace mspace
