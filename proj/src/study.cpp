#include "mspace/study.hpp"

#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mspace/clark.hpp"
#include "mspace/errors.hpp"
#include "mspace/kernel.hpp"
#include "mspace/parallel.hpp"
#include "mspace/rng.hpp"

namespace mspace {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

const std::set<std::string> kCommands{"nodes",         "reconstruct",       "decay",       "density",
                                      "certify-sieve", "certify-bernstein", "lemma-checks"};

// Typed access to one JSON object; every error names the full field path.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }

  void only(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : obj_.items())
      if (!allowed.count(key)) fail(at(key), "unknown field");
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return as_number(raw(key), at(key));
  }
  double required_number(const std::string& key) const {
    if (!has(key)) fail(at(key), "missing");
    return as_number(raw(key), at(key));
  }
  long integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    return as_integer(raw(key), at(key));
  }
  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!raw(key).is_string()) fail(at(key), "expected a string");
    return raw(key).get<std::string>();
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (std::size_t i = 0; const auto& v : array(key)) out.push_back(as_number(v, at(key) + "[" + std::to_string(i++) + "]"));
    return out;
  }
  std::vector<long> integers(const std::string& key, std::vector<long> fallback) const {
    if (!has(key)) return fallback;
    std::vector<long> out;
    for (std::size_t i = 0; const auto& v : array(key)) out.push_back(as_integer(v, at(key) + "[" + std::to_string(i++) + "]"));
    return out;
  }
  const json& array(const std::string& key) const {
    if (!raw(key).is_array()) fail(at(key), "expected an array");
    return raw(key);
  }

  static double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "must be finite");
    return d;
  }
  static long as_integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<long>();
  }

 private:
  const json& obj_;
  std::string path_;
};

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; translate to line and column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "config parse error at line " << line << ", column " << col << ": " << e.what();
    throw ConfigError(msg.str());
  }
}

InnerFunction inner_from_json(const json& j, const std::string& path) {
  const Fields f(j, path);
  f.only({"tau", "c", "zeros"});
  std::vector<BlaschkeZero> zeros;
  if (f.has("zeros")) {
    std::size_t i = 0;
    for (const auto& z : f.array("zeros")) {
      const Fields zf(z, f.at("zeros") + "[" + std::to_string(i++) + "]");
      zf.only({"re", "im", "mult"});
      const long mult = zf.integer("mult", 1);
      if (mult < 1) Fields::fail(zf.at("mult"), "must be >= 1");
      zeros.push_back({zf.required_number("re"), zf.required_number("im"), static_cast<int>(mult)});
    }
  }
  try {
    return InnerFunction(f.number("tau", 0.0), f.number("c", 0.0), std::move(zeros));
  } catch (const DomainError& e) {
    throw ConfigError("config field '" + path + "': " + e.what());
  }
}

MeasureSpec measure_from_json(const json& j, const std::string& path) {
  const Fields f(j, path);
  f.only({"atoms", "pieces"});
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  if (f.has("atoms")) {
    std::size_t i = 0;
    for (const auto& a : f.array("atoms")) {
      const Fields af(a, f.at("atoms") + "[" + std::to_string(i++) + "]");
      af.only({"x", "mass"});
      atoms.push_back({af.required_number("x"), af.number("mass", 1.0)});
    }
  }
  if (f.has("pieces")) {
    std::size_t i = 0;
    for (const auto& p : f.array("pieces")) {
      const Fields pf(p, f.at("pieces") + "[" + std::to_string(i++) + "]");
      pf.only({"l", "r", "h"});
      pieces.push_back({pf.required_number("l"), pf.required_number("r"), pf.number("h", 1.0)});
    }
  }
  try {
    return MeasureSpec(std::move(atoms), std::move(pieces));
  } catch (const DomainError& e) {
    throw ConfigError("config field '" + path + "': " + e.what());
  }
}

StudyParams params_from_json(const json& j) {
  const Fields f(j, "params");
  f.only({"gamma", "n_min", "n_max", "methods", "K", "window", "x_lo", "x_hi", "points", "band",
          "shift", "N", "a", "m", "over_c", "anchor", "deltas", "p", "seed", "corpus", "count",
          "vanishing_moments", "cont_points", "pairs", "max_gap"});
  StudyParams p;
  p.gamma = f.number("gamma", p.gamma);
  p.n_min = f.integer("n_min", p.n_min);
  p.n_max = f.integer("n_max", p.n_max);
  if (f.has("methods")) {
    std::size_t i = 0;
    for (const auto& m : f.array("methods")) {
      const std::string field = f.at("methods") + "[" + std::to_string(i++) + "]";
      if (!m.is_string()) Fields::fail(field, "expected a string");
      try {
        p.methods.push_back(to_string(method_from_string(m.get<std::string>())));
      } catch (const ConfigError& e) {
        Fields::fail(field, e.what());
      }
    }
  }
  p.K = f.integers("K", p.K);
  p.window = f.integer("window", p.window);
  p.x_lo = f.number("x_lo", p.x_lo);
  p.x_hi = f.number("x_hi", p.x_hi);
  p.points = static_cast<int>(f.integer("points", p.points));
  p.band = f.number("band", p.band);
  p.shift = f.number("shift", p.shift);
  p.N = static_cast<int>(f.integer("N", p.N));
  p.a = f.number("a", p.a);
  p.m = static_cast<int>(f.integer("m", p.m));
  p.over_c = f.number("over_c", p.over_c);
  if (f.has("anchor")) {
    const auto v = f.numbers("anchor", {});
    if (v.size() != 2) Fields::fail(f.at("anchor"), "expected [re, im]");
    p.anchor = cplx(v[0], v[1]);
  }
  p.deltas = f.numbers("deltas", p.deltas);
  p.p = f.numbers("p", p.p);
  if (f.has("seed")) {
    const json& s = f.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long>() >= 0))
      Fields::fail(f.at("seed"), "expected a non-negative integer");
    p.seed = s.get<std::uint64_t>();
  }
  p.corpus = static_cast<int>(f.integer("corpus", p.corpus));
  p.count = static_cast<int>(f.integer("count", p.count));
  p.vanishing_moments = static_cast<int>(f.integer("vanishing_moments", p.vanishing_moments));
  p.cont_points = static_cast<int>(f.integer("cont_points", p.cont_points));
  p.pairs = static_cast<int>(f.integer("pairs", p.pairs));
  p.max_gap = f.number("max_gap", p.max_gap);
  return p;
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) Fields::fail(field, what);
}

void validate(const StudyConfig& c) {
  const auto& p = c.params;
  const auto& cmd = c.command;
  if (cmd == "nodes") {
    require(p.n_min <= p.n_max, "params.n_min", "must be <= params.n_max");
    require(c.inner.c() > 0.0, "inner.c", "nodes need exponential type c > 0");
  }
  if (cmd == "reconstruct" || cmd == "decay") {
    require(!p.methods.empty(), "params.methods", "at least one method is required");
    require(p.points >= 2, "params.points", "must be >= 2");
    require(p.x_lo < p.x_hi, "params.x_lo", "must be < params.x_hi");
    require(p.band > 0.0, "params.band", "must be > 0");
    require(p.over_c > 0.0, "params.over_c", "must be > 0");
    require(p.m >= 1, "params.m", "must be >= 1");
    require(p.N >= 0, "params.N", "must be >= 0");
    require(p.a > 0.0, "params.a", "must be > 0");
    require(p.anchor.imag() > 0.0, "params.anchor", "needs Im > 0");
  }
  if (cmd == "reconstruct") require(p.window >= 1, "params.window", "must be >= 1");
  if (cmd == "decay") {
    require(p.K.size() >= 2, "params.K", "needs at least two window sizes");
    for (long k : p.K) require(k >= 1, "params.K", "entries must be >= 1");
  }
  if (cmd == "reconstruct" || cmd == "decay") {
    for (const auto& m : p.methods) {
      const Method method = method_from_string(m);
      if (method == Method::kClark || method == Method::kModelOversample)
        require(c.inner.is_nontrivial(), "inner", "model-space methods need a non-constant inner function");
    }
  }
  if (cmd == "density" || cmd == "certify-sieve") {
    require(!p.deltas.empty(), "params.deltas", "at least one delta is required");
    for (double d : p.deltas) require(d > 0.0, "params.deltas", "entries must be > 0");
  }
  if (cmd == "certify-sieve" || cmd == "certify-bernstein") {
    require(!p.p.empty(), "params.p", "at least one exponent is required");
    for (double e : p.p) require(e >= 1.0, "params.p", "entries must be >= 1");
    require(p.corpus >= 1, "params.corpus", "must be >= 1");
    require(p.count >= 1, "params.count", "must be >= 1");
    require(p.vanishing_moments >= 0, "params.vanishing_moments", "must be >= 0");
    require(p.count > 2 * p.vanishing_moments, "params.count",
            "must exceed 2 * params.vanishing_moments");
    require(c.inner.is_nontrivial(), "inner", "the model space of a constant is trivial");
  }
  if (cmd == "certify-bernstein") require(p.cont_points >= 0, "params.cont_points", "must be >= 0");
  if (cmd == "lemma-checks") {
    require(p.pairs >= 1, "params.pairs", "must be >= 1");
    require(p.max_gap >= 0.0, "params.max_gap", "must be >= 0");
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return x;
}

DecayRow error_row(long K, const std::vector<double>& xs, const std::vector<double>& err) {
  DecayRow row{K, 0.0, 0.0};
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  double l2 = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    row.sup_error = std::max(row.sup_error, err[i]);
    const double w = (i == 0 || i + 1 == err.size()) ? 0.5 * h : h;
    l2 += w * err[i] * err[i];
  }
  row.l2_error = std::sqrt(l2);
  return row;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw Error("cannot write report " + path.string());
    out_ << header << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }
  const fs::path& path() const { return path_; }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }

  fs::path path_;
  std::ofstream out_;
};

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

json inner_to_json(const InnerFunction& s) {
  json zeros = json::array();
  for (const auto& z : s.zeros()) zeros.push_back({{"re", z.re}, {"im", z.im}, {"mult", z.multiplicity}});
  return {{"tau", s.tau()}, {"c", s.c()}, {"zeros", zeros}};
}

fs::path write_manifest(const fs::path& dir, const StudyConfig& c) {
  const auto& p = c.params;
  json m{{"seed", p.seed},
         {"count", p.corpus},
         {"kernels_per_function", p.count},
         {"vanishing_moments", p.vanishing_moments},
         {"spec", inner_to_json(c.inner)},
         {"spec_hash", hex64(spec_hash(c.inner))}};
  const fs::path path = dir / "corpus_manifest.json";
  std::ofstream(path) << m.dump(2) << '\n';
  return path;
}

bool exceeds(double value, double bound) { return value > bound + 1e-9 * std::max(1.0, bound); }

// f(t) = sinc(band (t - shift)) for the Paley-Wiener studies.
auto pw_test_function(const StudyParams& p) {
  return [band = p.band, shift = p.shift](double t) { return cplx(sinc(band * (t - shift)), 0.0); };
}

cplx pw_reconstruct(Method method, const StudyParams& p, const UniformSamples& s, double x) {
  if (method == Method::kShannon) return shannon_reconstruct(s, p.band, x);
  return pw_oversample_reconstruct(s, SincKernelSpec{p.N, p.a, p.band}, x);
}

UniformSamples pw_samples(Method method, const StudyParams& p, long K) {
  const double b = method == Method::kShannon ? p.band : SincKernelSpec{p.N, p.a, p.band}.band();
  return sample_uniform(pw_test_function(p), kPi / b, -K, K);
}

SamplingGrid model_grid(const InnerFunction& big, const StudyParams& p, long K, unsigned threads) {
  const double lo = (big.phase(p.x_lo).value - p.gamma) / (2 * kPi);
  const double hi = (big.phase(p.x_hi).value - p.gamma) / (2 * kPi);
  return solve_nodes(big, p.gamma, static_cast<long>(std::floor(lo)) - K - 1,
                     static_cast<long>(std::ceil(hi)) + K + 1, threads);
}

cplx model_reconstruct(Method method, const SampleSet& window, const InnerFunction& base,
                       const StudyParams& p, double x) {
  if (method == Method::kClark) return clark_reconstruct(window, window.grid.spec, x);
  return model_oversample_reconstruct(window, base, p.over_c, p.m, x);
}

bool is_pw(Method m) { return m == Method::kShannon || m == Method::kPwOversample; }

// ---- commands ---------------------------------------------------------------

StudyResult run_nodes(const StudyConfig& c, const fs::path& dir, unsigned threads) {
  const auto& p = c.params;
  const auto grid = solve_nodes(c.inner, p.gamma, p.n_min, p.n_max, threads);
  Csv csv(dir / "nodes.csv", "n,x_n,weight");
  for (std::size_t i = 0; i < grid.size(); ++i) csv.row(grid.index_at(i), grid.nodes[i], grid.weights[i]);
  std::ostringstream s;
  s << "nodes: " << grid.size() << " nodes written\n";
  return {0, {csv.path()}, s.str()};
}

StudyResult run_reconstruct(const StudyConfig& c, const fs::path& dir, unsigned threads) {
  const auto& p = c.params;
  StudyResult result;
  std::ostringstream s;
  const auto xs = linspace(p.x_lo, p.x_hi, p.points);
  for (const auto& name : p.methods) {
    const Method method = method_from_string(name);
    std::vector<cplx> exact(xs.size()), approx(xs.size());
    if (is_pw(method)) {
      const auto f = pw_test_function(p);
      const auto samples = pw_samples(method, p, p.window);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        exact[i] = f(xs[i]);
        approx[i] = pw_reconstruct(method, p, samples, xs[i]);
      }
    } else {
      const auto f = random_model_function(c.inner, p.count, p.seed, p.vanishing_moments);
      const InnerFunction big = method == Method::kClark ? c.inner : enlarge(c.inner, p.over_c, {});
      const auto grid = model_grid(big, p, p.window, threads);
      const auto samples = sample_grid(f, grid);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto window = samples.window(grid.nearest_index(xs[i]), p.window);
        exact[i] = f(xs[i]);
        approx[i] = model_reconstruct(method, window, c.inner, p, xs[i]);
      }
    }
    Csv csv(dir / ("reconstruct_" + name + ".csv"), "x,re,im,exact_re,exact_im,abs_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = std::abs(approx[i] - exact[i]);
      worst = std::max(worst, e);
      csv.row(xs[i], approx[i].real(), approx[i].imag(), exact[i].real(), exact[i].imag(), e);
    }
    result.reports.push_back(csv.path());
    s << name << ": max abs error " << format_double(worst) << '\n';
  }
  result.summary = s.str();
  return result;
}

StudyResult run_decay(const StudyConfig& c, const fs::path& dir, unsigned threads) {
  (void)threads;
  const auto& p = c.params;
  StudyResult result;
  std::ostringstream s;
  Csv slopes(dir / "decay_slopes.csv", "method,sup_slope,l2_slope");
  for (const auto& name : p.methods) {
    const Method method = method_from_string(name);
    const auto rows = is_pw(method) ? pw_decay(method, p) : model_decay(method, c.inner, p);
    Csv csv(dir / ("decay_" + name + ".csv"), "K,sup_error,l2_error");
    for (const auto& r : rows) csv.row(r.K, r.sup_error, r.l2_error);
    result.reports.push_back(csv.path());
    const double sup_slope = fitted_log_slope(rows, true);
    const double l2_slope = fitted_log_slope(rows, false);
    slopes.row(name, sup_slope, l2_slope);
    s << name << ": fitted slope " << format_double(sup_slope) << '\n';
  }
  result.reports.push_back(slopes.path());
  result.summary = s.str();
  return result;
}

StudyResult run_density(const StudyConfig& c, const fs::path& dir, unsigned) {
  const auto& p = c.params;
  const bool phase = c.inner.c() > 0.0;
  Csv csv(dir / "density.csv", phase ? "delta,D,witness_lo,witness_hi,D_theta,theta_witness_lo,theta_witness_hi"
                                     : "delta,D,witness_lo,witness_hi");
  for (double delta : p.deltas) {
    const auto d = d_mu(c.measure, delta);
    if (phase) {
      const auto t = d_mu_theta(c.measure, c.inner, delta);
      csv.row(delta, d.value, d.witness_lo, d.witness_hi, t.value, t.witness_lo, t.witness_hi);
    } else {
      csv.row(delta, d.value, d.witness_lo, d.witness_hi);
    }
  }
  return {0, {csv.path()}, "density: " + std::to_string(p.deltas.size()) + " rows written\n"};
}

StudyResult run_certify_sieve(const StudyConfig& c, const fs::path& dir, unsigned threads) {
  const auto& p = c.params;
  StudyResult result;
  std::ostringstream s;
  const auto corpus = make_corpus(c.inner, p.corpus, p.seed, p.count, p.vanishing_moments, threads);
  result.reports.push_back(write_manifest(dir, c));
  const bool paley_wiener = c.inner.zeros().empty() && c.inner.c() > 0.0;
  std::size_t violations = 0;
  for (double e : p.p) {
    std::vector<double> ratios(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) {
      ratios[i] = empirical_embedding_ratio(lp_grid(corpus[i], e), c.measure, e);
    });
    const double max_ratio = *std::max_element(ratios.begin(), ratios.end());
    Csv csv(dir / ("certify_sieve_p" + format_double(e) + ".csv"), "delta,D,bound,max_ratio,margin");
    std::optional<Csv> dl;
    if (paley_wiener && e == 2.0)
      dl.emplace(dir / "certify_sieve_donoho_logan.csv", "delta,D,bound,max_ratio,margin");
    for (double delta : p.deltas) {
      const double D = d_mu(c.measure, delta).value;
      const double bound = model_sieve_bound(c.inner, delta, D, e);
      csv.row(delta, D, bound, max_ratio, bound - max_ratio);
      if (exceeds(max_ratio, bound)) ++violations;
      if (dl) {
        // K_Theta = e^{icz/2} PW_{c/2} for Theta = e^{i tau} e^{icz}
        const double dl_bound = donoho_logan_bound_p2(0.5 * c.inner.c(), delta, D);
        dl->row(delta, D, dl_bound, max_ratio, dl_bound - max_ratio);
        if (exceeds(max_ratio, dl_bound)) ++violations;
      }
    }
    result.reports.push_back(csv.path());
    if (dl) result.reports.push_back(dl->path());
    s << "p=" << format_double(e) << ": max ratio " << format_double(max_ratio) << '\n';
  }
  s << "violations: " << violations << '\n';
  result.exit_code = violations ? 2 : 0;
  result.summary = s.str();
  return result;
}

StudyResult run_certify_bernstein(const StudyConfig& c, const fs::path& dir, unsigned threads) {
  const auto& p = c.params;
  StudyResult result;
  std::ostringstream s;
  const auto corpus = make_corpus(c.inner, p.corpus, p.seed, p.count, p.vanishing_moments, threads);
  result.reports.push_back(write_manifest(dir, c));
  std::size_t violations = 0;
  Csv csv(dir / "certify_bernstein.csv", "index,p,derivative_norm,bound,ratio");
  for (double e : p.p) {
    std::vector<std::pair<double, double>> rows(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) { rows[i] = bernstein_check(corpus[i], e); });
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto [d, b] = rows[i];
      csv.row(i, e, d, b, d / b);
      worst = std::max(worst, d / b);
      if (d > b * (1 + 1e-9)) ++violations;
    }
    s << "p=" << format_double(e) << ": max ratio " << format_double(worst) << '\n';
  }
  result.reports.push_back(csv.path());
  if (p.cont_points > 0) {
    Csv cont(dir / "bernstein_cont.csv", "index,x,analytic_re,analytic_im,integral_re,integral_im,rel_error");
    Rng rng(p.seed ^ 0x636f6e74ULL);
    double worst = 0.0;
    for (int k = 0; k < p.cont_points; ++k) {
      const auto i = static_cast<std::size_t>(k) % corpus.size();
      const double x = rng.uniform(-5.0, 5.0);
      const cplx a = corpus[i].derivative(x);
      const cplx q = derivative_by_kernel_integral(corpus[i], x);
      const double rel = std::abs(a - q) / std::abs(a);
      worst = std::max(worst, rel);
      cont.row(i, x, a.real(), a.imag(), q.real(), q.imag(), rel);
    }
    result.reports.push_back(cont.path());
    s << "derivative integral: max relative gap " << format_double(worst) << '\n';
  }
  s << "violations: " << violations << '\n';
  result.exit_code = violations ? 2 : 0;
  result.summary = s.str();
  return result;
}

StudyResult run_lemma_checks(const StudyConfig& c, const fs::path& dir, unsigned threads) {
  const auto& p = c.params;
  Rng rng(p.seed);
  struct Pair {
    int m;
    double a, b;
  };
  std::vector<Pair> pairs;
  pairs.push_back({1, 0.0, 0.0});
  for (int i = 0; i < p.pairs; ++i) {
    const double a = rng.uniform(-10.0, 10.0);
    pairs.push_back({1, a, a + rng.uniform(-p.max_gap, p.max_gap)});
  }
  for (int m : {2, 3})
    for (int i = 0; i < std::max(1, p.pairs / 2); ++i) {
      const double a = rng.uniform(-10.0, 10.0);
      pairs.push_back({m, a, a + rng.uniform(-p.max_gap, p.max_gap)});
    }
  std::vector<double> values(pairs.size()), bounds(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    const auto& q = pairs[i];
    if (q.m == 1) {
      values[i] = xi_product_integral(q.a, q.b);
      bounds[i] = xi_product_bound(q.a, q.b);
    } else {
      values[i] = xi_power_product_integral(q.a, q.b, q.m);
      bounds[i] = xi_power_bound(q.a, q.b, q.m);
    }
  });
  Csv csv(dir / "lemma_checks.csv", "m,a,b,integral,bound,margin");
  std::size_t violations = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    csv.row(pairs[i].m, pairs[i].a, pairs[i].b, values[i], bounds[i], bounds[i] - values[i]);
    if (values[i] > bounds[i]) ++violations;
  }
  std::ostringstream s;
  s << "lemma checks: " << pairs.size() << " pairs, diagonal value " << format_double(values[0])
    << ", violations: " << violations << '\n';
  return {violations ? 2 : 0, {csv.path()}, s.str()};
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

InnerFunction parse_inner(const std::string& json_text) { return inner_from_json(parse_json(json_text), "inner"); }

MeasureSpec parse_measure(const std::string& json_text) {
  return measure_from_json(parse_json(json_text), "measure");
}

StudyConfig parse_config(const std::string& text) {
  const json j = parse_json(text);
  const Fields top(j, "");
  top.only({"command", "inner", "measure", "params", "output"});
  StudyConfig c;
  if (!top.has("command")) Fields::fail("command", "missing");
  c.command = top.string("command", "");
  if (!kCommands.count(c.command)) Fields::fail("command", "unknown command '" + c.command + "'");
  if (top.has("inner")) c.inner = inner_from_json(top.raw("inner"), "inner");
  else if (c.command != "lemma-checks") Fields::fail("inner", "missing");
  if (top.has("measure")) c.measure = measure_from_json(top.raw("measure"), "measure");
  if (top.has("params")) c.params = params_from_json(top.raw("params"));
  c.output = top.string("output", c.output);
  validate(c);
  return c;
}

StudyConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::uint64_t spec_hash(const InnerFunction& spec) {
  std::string text = format_double(spec.tau()) + ";" + format_double(spec.c());
  for (const auto& z : spec.zeros())
    text += ";" + format_double(z.re) + "," + format_double(z.im) + "," + std::to_string(z.multiplicity);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<DecayRow> pw_decay(Method method, const StudyParams& p) {
  if (!is_pw(method)) throw DomainError("pw_decay: method must be shannon or pw_oversample");
  const auto f = pw_test_function(p);
  const auto xs = linspace(p.x_lo, p.x_hi, p.points);
  std::vector<DecayRow> rows;
  for (long K : p.K) {
    const auto samples = pw_samples(method, p, K);
    std::vector<double> err(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      err[i] = std::abs(pw_reconstruct(method, p, samples, xs[i]) - f(xs[i]));
    rows.push_back(error_row(K, xs, err));
  }
  return rows;
}

std::vector<DecayRow> model_decay(Method method, const InnerFunction& base, const StudyParams& p) {
  if (is_pw(method)) throw DomainError("model_decay: method must be clark or model_oversample");
  const KernelCombination f(base, {p.anchor}, {1.0});
  const InnerFunction big = enlarge(base, p.over_c, {});
  const long k_max = *std::max_element(p.K.begin(), p.K.end());
  const auto grid = model_grid(big, p, k_max, 1);
  const auto samples = sample_grid(f, grid);
  const auto xs = linspace(p.x_lo, p.x_hi, p.points);
  std::vector<DecayRow> rows;
  for (long K : p.K) {
    std::vector<double> err(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto window = samples.window(grid.nearest_index(xs[i]), K);
      err[i] = std::abs(model_reconstruct(method, window, base, p, xs[i]) - f(xs[i]));
    }
    rows.push_back(error_row(K, xs, err));
  }
  return rows;
}

StudyResult run_study(const StudyConfig& config, const fs::path& out_dir, unsigned threads) {
  const fs::path dir = (out_dir / config.output).lexically_normal();
  fs::create_directories(dir);
  const auto& cmd = config.command;
  if (cmd == "nodes") return run_nodes(config, dir, threads);
  if (cmd == "reconstruct") return run_reconstruct(config, dir, threads);
  if (cmd == "decay") return run_decay(config, dir, threads);
  if (cmd == "density") return run_density(config, dir, threads);
  if (cmd == "certify-sieve") return run_certify_sieve(config, dir, threads);
  if (cmd == "certify-bernstein") return run_certify_bernstein(config, dir, threads);
  if (cmd == "lemma-checks") return run_lemma_checks(config, dir, threads);
  throw ConfigError("unknown command '" + cmd + "'");
}

}  // namespace mspace
