#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mspace/harness.hpp"
#include "mspace/inner_function.hpp"
#include "mspace/reconstruct.hpp"
#include "mspace/sieve.hpp"

namespace mspace {

/// Command-specific scalars. Absent fields keep these defaults.
struct StudyParams {
  double gamma = 0.0;
  long n_min = -5;
  long n_max = 5;

  // reconstruct / decay
  std::vector<std::string> methods;
  std::vector<long> K{25, 50, 100, 200, 400};
  long window = 300;
  double x_lo = -1.0;
  double x_hi = 1.0;
  int points = 101;
  double band = 1.0;   // Paley-Wiener type c for shannon / pw_oversample
  double shift = 0.5;  // PW test function sinc(band (t - shift))
  int N = 2;
  double a = 0.5;
  int m = 2;
  double over_c = 1.0;
  cplx anchor{0.0, 1.0};  // model-space decay test function k_anchor

  // density / certification
  std::vector<double> deltas{0.1, 0.5, 1.0, 2.0};
  std::vector<double> p{1.0, 2.0};

  // corpus
  std::uint64_t seed = 0;
  int corpus = 10;  // number of functions
  int count = 9;    // kernels per function
  int vanishing_moments = 3;
  int cont_points = 0;  // (f, x) pairs for the derivative-integral spot check

  // lemma-checks
  int pairs = 50;
  double max_gap = 30.0;
};

struct StudyConfig {
  std::string command;
  InnerFunction inner;
  MeasureSpec measure;
  StudyParams params;
  std::string output = ".";  // report directory, relative to --out
};

/// Parses a JSON StudyConfig; ConfigError messages name the line or field.
StudyConfig parse_config(const std::string& text);
StudyConfig load_config(const std::filesystem::path& path);

InnerFunction parse_inner(const std::string& json_text);
MeasureSpec parse_measure(const std::string& json_text);

/// 64-bit FNV-1a hash of the canonical text of the spec.
std::uint64_t spec_hash(const InnerFunction& spec);

struct StudyResult {
  int exit_code = 0;  // 0 ok, 2 certified inequality violated
  std::vector<std::filesystem::path> reports;
  std::string summary;
};

/// Runs the configured command and writes its reports below out_dir.
StudyResult run_study(const StudyConfig& config, const std::filesystem::path& out_dir,
                      unsigned threads = 1);

/// Truncation errors of shannon_reconstruct (b = band) or pw_oversample_reconstruct
/// on f(t) = sinc(band (t - shift)), keeping |k| <= K, at `points` points of [x_lo, x_hi].
std::vector<DecayRow> pw_decay(Method method, const StudyParams& params);

/// Truncation errors of clark_reconstruct and model_oversample_reconstruct on the
/// grid of Theta_{over_c} * base, for f = k_anchor of the base space, keeping
/// |n - n(x)| <= K around each evaluation point.
std::vector<DecayRow> model_decay(Method method, const InnerFunction& base,
                                  const StudyParams& params);

std::string format_double(double v);

}  // namespace mspace
