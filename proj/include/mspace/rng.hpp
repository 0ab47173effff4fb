#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mspace {

/// SplitMix64 generator. The output stream is fixed by the algorithm
/// (seed 0 -> 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, ...), so corpora are
/// reproducible across platforms and standard libraries. Doubles and normal
/// deviates are derived here rather than through <random> distributions,
/// whose outputs are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent child stream.
  Rng split() { return Rng(next()); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller (one deviate per call, two uniforms).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Seed of the index-th member of a corpus generated from `seed`.
inline std::uint64_t corpus_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return r.next();
}

}  // namespace mspace
