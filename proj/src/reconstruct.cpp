#include "mspace/reconstruct.hpp"

#include <cmath>
#include <numbers>

#include "mspace/errors.hpp"

namespace mspace {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::kShannon:
      return "shannon";
    case Method::kPwOversample:
      return "pw_oversample";
    case Method::kClark:
      return "clark";
    case Method::kModelOversample:
      return "model_oversample";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "shannon") return Method::kShannon;
  if (name == "pw_oversample") return Method::kPwOversample;
  if (name == "clark") return Method::kClark;
  if (name == "model_oversample") return Method::kModelOversample;
  throw ConfigError("unknown reconstruction method '" + name + "'");
}

void ReconstructionPlan::validate() const {
  if (window < 1) throw ConfigError("reconstruction plan: window must be >= 1");
  const bool wants_sinc = method == Method::kPwOversample;
  const bool wants_model = method == Method::kModelOversample;
  if (wants_sinc != sinc_spec.has_value())
    throw ConfigError("reconstruction plan: sinc kernel parameters are required for, and only for, "
                      "pw_oversample");
  if (wants_model != m.has_value() || wants_model != over_c.has_value())
    throw ConfigError("reconstruction plan: m and over_c are required for, and only for, "
                      "model_oversample");
  if (sinc_spec) sinc_spec->validate();
  if (m && *m < 1) throw ConfigError("reconstruction plan: m must be >= 1");
  if (over_c && !(*over_c > 0.0)) throw ConfigError("reconstruction plan: over_c must be > 0");
}

SampleSet SampleSet::window(long center, long half_width) const {
  const long lo = std::max(grid.n_min, center - half_width);
  const long hi = std::min(grid.n_max, center + half_width);
  if (lo > hi) throw DomainError("SampleSet::window: window does not intersect the grid");
  SampleSet out;
  out.grid.spec = grid.spec;
  out.grid.gamma = grid.gamma;
  out.grid.n_min = lo;
  out.grid.n_max = hi;
  const auto first = grid.offset_of(lo);
  const auto last = grid.offset_of(hi) + 1;
  out.grid.nodes.assign(grid.nodes.begin() + first, grid.nodes.begin() + last);
  out.grid.weights.assign(grid.weights.begin() + first, grid.weights.begin() + last);
  out.values.assign(values.begin() + first, values.begin() + last);
  return out;
}

cplx shannon_reconstruct(const UniformSamples& samples, double b, double x) {
  if (!(b > 0.0)) throw DomainError("shannon_reconstruct: b must be > 0");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < samples.values.size(); ++i)
    sum += samples.values[i] * sinc(b * (x - samples.position(i)));
  return sum;
}

cplx pw_oversample_reconstruct(const UniformSamples& samples, const SincKernelSpec& k, double x) {
  k.validate();
  const double expected = kPi / k.band();
  if (std::abs(samples.spacing - expected) > 1e-12 * expected)
    throw DomainError("pw_oversample_reconstruct: sample spacing must equal pi / (c + 2 N a)");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < samples.values.size(); ++i)
    sum += samples.values[i] * pw_oversample_kernel(k, x - samples.position(i));
  return sum;
}

namespace {

void check_lengths(const SampleSet& s) {
  if (s.values.size() != s.grid.size())
    throw DomainError("sample set: value count does not match grid size");
}

// k_{x_n}(x) / ||k_{x_n}||^2 with the analytic value 1 on the diagonal.
cplx clark_ratio(const SampleSet& s, std::size_t i, double x) {
  const double xn = s.grid.nodes[i];
  if (x == xn) return 1.0;
  return boundary_kernel(s.grid.spec, xn, x) / s.grid.weights[i];
}

}  // namespace

cplx clark_reconstruct(const SampleSet& samples, const InnerFunction& spec, double x) {
  check_lengths(samples);
  if (!(samples.grid.spec == spec))
    throw GridMismatchError("clark_reconstruct: grid was built for a different inner function");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < samples.values.size(); ++i)
    sum += samples.values[i] * clark_ratio(samples, i, x);
  return sum;
}

cplx model_oversample_reconstruct(const SampleSet& samples, const InnerFunction& base_spec,
                                  double over_c, int m, double x) {
  check_lengths(samples);
  if (!(over_c > 0.0)) throw DomainError("model_oversample_reconstruct: over_c must be > 0");
  if (m < 1) throw DomainError("model_oversample_reconstruct: m must be >= 1");
  if (!(samples.grid.spec == enlarge(base_spec, over_c, {})))
    throw GridMismatchError(
        "model_oversample_reconstruct: grid must be built from Theta_{over_c} * base");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < samples.values.size(); ++i) {
    const double d = x - samples.grid.nodes[i];
    const double damp = std::pow(sinc(over_c * d / (2.0 * m)), m);
    sum += samples.values[i] * std::polar(damp, -0.5 * over_c * d) * clark_ratio(samples, i, x);
  }
  return sum;
}

double plancherel_norm(const SampleSet& samples) {
  check_lengths(samples);
  if (samples.values.empty()) throw DomainError("plancherel_norm: empty sample set");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.values.size(); ++i)
    sum += std::norm(samples.values[i]) / samples.grid.weights[i];
  return std::sqrt(sum);
}

double fitted_log_slope(std::span<const DecayRow> rows, bool use_sup) {
  if (rows.size() < 2) throw DomainError("fitted_log_slope: need at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double e = use_sup ? r.sup_error : r.l2_error;
    if (!(e > 0.0) || r.K <= 0) throw DomainError("fitted_log_slope: errors and K must be positive");
    const double lx = std::log(static_cast<double>(r.K));
    const double ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mspace
