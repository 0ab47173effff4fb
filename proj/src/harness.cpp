#include "mspace/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "mspace/errors.hpp"
#include "mspace/kernel.hpp"
#include "mspace/parallel.hpp"
#include "mspace/quadrature.hpp"
#include "mspace/rng.hpp"

namespace mspace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxRadius = 1e6;
const cplx kI(0.0, 1.0);

double tail_integral(double C, double s, double p, double R) {
  // Both tails of |g|^p with |g(x)| <= C / |x|^s for |x| >= R.
  return 2.0 * std::pow(C, p) / ((s * p - 1.0) * std::pow(R, s * p - 1.0));
}

// Uniform panels on [-near, near] plus panels growing geometrically to R.
std::vector<double> panel_breaks(double near, double h_near, double oscillation, double R) {
  std::vector<double> right;
  double x = near;
  while (x < R) {
    const double w = std::clamp(0.1 * x, oscillation, 8.0 * oscillation);
    x = std::min(R, x + w);
    right.push_back(x);
  }
  std::vector<double> out;
  out.reserve(2 * right.size() + static_cast<std::size_t>(2.0 * near / h_near) + 2);
  for (auto it = right.rbegin(); it != right.rend(); ++it) out.push_back(-*it);
  for (double b : quad::uniform_breaks(-near, near, h_near)) out.push_back(b);
  for (double b : right) out.push_back(b);
  return out;
}

double near_radius(const KernelCombination& f) {
  double r = std::max(10.0, f.envelope_radius());
  for (const auto& w : f.anchors()) r = std::max(r, std::abs(w.real()) + 10.0 * w.imag());
  for (const auto& z : f.spec().zeros()) r = std::max(r, std::abs(z.re) + 10.0 * z.im);
  return r;
}

template <class G>
GridFunction certified_grid(const KernelCombination& f, G&& g, double C, double p,
                            double rel_tol) {
  if (!(p >= 1.0)) throw DomainError("lp norm: p must be >= 1");
  const double s = f.vanishing_moments() + 1.0;
  if (!(s * p > 1.0)) {
    std::ostringstream msg;
    msg << "lp norm: a combination with " << f.vanishing_moments()
        << " vanishing moments decays like 1/|x|^" << s << " and is not certified in L^" << p;
    throw DomainError(msg.str());
  }
  auto integrand = [&](double x) {
    const double a = std::abs(g(x));
    return p == 2.0 ? a * a : std::pow(a, p);
  };

  const double near = near_radius(f);
  const double h_near = 0.5 * f.feature_scale();
  const double oscillation = 2.0 * kPi / std::max(f.theta_prime_sup(), 1e-12);
  quad::Options opts;
  opts.rel_tol = 0.25 * rel_tol;

  const auto near_breaks = quad::uniform_breaks(-near, near, h_near);
  const auto first = quad::integrate<double>(integrand, near_breaks, opts);
  if (!(first.value > 0.0)) throw DomainError("lp norm: function vanishes on the near field");

  double R = near;
  const double needed = std::pow(2.0 * std::pow(C, p) / ((s * p - 1.0) * 0.5 * rel_tol * first.value),
                                 1.0 / (s * p - 1.0));
  R = std::max(R, needed);
  if (R > kMaxRadius) {
    std::ostringstream msg;
    msg << "lp norm: certified tail needs radius " << R << " > " << kMaxRadius;
    throw ConvergenceError(msg.str());
  }

  const auto breaks = panel_breaks(near, h_near, oscillation, R);
  const auto res = quad::integrate<double>(integrand, breaks, opts);
  if (!res.converged) throw ConvergenceError("lp norm: quadrature did not reach tolerance");

  GridFunction out;
  out.lo = -R;
  out.hi = R;
  out.p = p;
  out.interior = res.value;
  out.quadrature_error = res.error;
  out.tail_bound = tail_integral(C, s, p, R);
  out.nodes.reserve(res.panels.size() * 15);
  for (const auto& panel : res.panels) {
    const double center = 0.5 * (panel.a + panel.b);
    const double half = 0.5 * (panel.b - panel.a);
    for (int j = 0; j < 8; ++j) {
      const double dx = half * quad::kKronrodNodes[j];
      const double w = half * quad::kKronrodWeights[j];
      if (j == 7) {
        out.nodes.push_back(center);
        out.weights.push_back(w);
      } else {
        out.nodes.push_back(center - dx);
        out.weights.push_back(w);
        out.nodes.push_back(center + dx);
        out.weights.push_back(w);
      }
    }
  }
  out.values.reserve(out.nodes.size());
  for (double x : out.nodes) out.values.push_back(g(x));
  return out;
}

}  // namespace

KernelCombination::KernelCombination(InnerFunction spec, std::vector<cplx> anchors,
                                     std::vector<cplx> coefficients, int vanishing_moments)
    : spec_(std::move(spec)),
      anchors_(std::move(anchors)),
      coefficients_(std::move(coefficients)),
      vanishing_moments_(vanishing_moments) {
  if (anchors_.size() != coefficients_.size())
    throw DomainError("kernel combination: anchor and coefficient counts differ");
  if (anchors_.empty()) throw DomainError("kernel combination: needs at least one anchor");
  if (vanishing_moments_ < 0) throw DomainError("kernel combination: vanishing_moments must be >= 0");
  for (const auto& w : anchors_)
    if (!(w.imag() > 0.0)) throw DomainError("kernel combination: anchors need Im w > 0");

  theta_conj_.reserve(anchors_.size());
  for (const auto& w : anchors_) theta_conj_.push_back(std::conj(spec_(w)));
  theta_prime_sup_ = derivative_sup_norm(spec_);

  double wmax = 0.0;
  for (const auto& w : anchors_) wmax = std::max(wmax, std::abs(w));
  envelope_radius_ = std::max(1.0, 2.0 * wmax);
  const int q = vanishing_moments_;
  double cv = 0.0, cd = 0.0;
  for (std::size_t j = 0; j < anchors_.size(); ++j) {
    const double a = std::abs(coefficients_[j]);
    const double b = std::abs(theta_conj_[j]);
    const double wq = std::pow(std::abs(anchors_[j]), q);
    cv += a * (1.0 + b) * 2.0 * wq;
    cd += a * wq * ((1.0 + b) * (2.0 * q + 4.0) / envelope_radius_ + 2.0 * theta_prime_sup_ * b);
  }
  value_envelope_ = cv / (2.0 * kPi);
  derivative_envelope_ = cd / (2.0 * kPi);
}

cplx KernelCombination::operator()(double x) const {
  const cplx theta = spec_(x);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < anchors_.size(); ++j)
    sum += coefficients_[j] * (1.0 - theta_conj_[j] * theta) / (x - std::conj(anchors_[j]));
  return kI / (2.0 * kPi) * sum;
}

cplx KernelCombination::operator()(cplx z) const {
  if (z.imag() < 0.0) throw DomainError("kernel combination: evaluation needs Im z >= 0");
  const cplx theta = spec_(z);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < anchors_.size(); ++j)
    sum += coefficients_[j] * (1.0 - theta_conj_[j] * theta) / (z - std::conj(anchors_[j]));
  return kI / (2.0 * kPi) * sum;
}

cplx KernelCombination::derivative(double x) const {
  const cplx theta = spec_(x);
  const cplx theta_prime = kI * spec_.phase(x).derivative * theta;
  cplx sum = 0.0;
  for (std::size_t j = 0; j < anchors_.size(); ++j) {
    const cplx d = x - std::conj(anchors_[j]);
    sum += coefficients_[j] *
           (-theta_conj_[j] * theta_prime / d - (1.0 - theta_conj_[j] * theta) / (d * d));
  }
  return kI / (2.0 * kPi) * sum;
}

double KernelCombination::l2_norm() const {
  // ||f||^2 = sum_{j,k} alpha_j conj(alpha_k) k_{w_j}(w_k).
  double total = 0.0;
  for (std::size_t j = 0; j < anchors_.size(); ++j) {
    for (std::size_t k = 0; k < anchors_.size(); ++k) {
      const cplx kjk = kI / (2.0 * kPi) * (1.0 - theta_conj_[j] * std::conj(theta_conj_[k])) /
                       (anchors_[k] - std::conj(anchors_[j]));
      total += (coefficients_[j] * std::conj(coefficients_[k]) * kjk).real();
    }
  }
  return std::sqrt(std::max(total, 0.0));
}

std::pair<cplx, cplx> KernelCombination::moments(int k) const {
  cplx m = 0.0, n = 0.0;
  for (std::size_t j = 0; j < anchors_.size(); ++j) {
    const cplx t = coefficients_[j] * std::pow(std::conj(anchors_[j]), k);
    m += t;
    n += t * theta_conj_[j];
  }
  return {m, n};
}

double KernelCombination::feature_scale() const {
  double s = kPi / std::max(theta_prime_sup_, 1e-12);
  for (const auto& w : anchors_) s = std::min(s, w.imag());
  for (const auto& z : spec_.zeros()) s = std::min(s, z.im);
  return s;
}

KernelCombination KernelCombination::scaled(cplx s) const {
  std::vector<cplx> coeffs = coefficients_;
  for (auto& a : coeffs) a *= s;
  return KernelCombination(spec_, anchors_, std::move(coeffs), vanishing_moments_);
}

KernelCombination combine(const KernelCombination& f, cplx alpha, const KernelCombination& g,
                          cplx beta) {
  if (!(f.spec() == g.spec())) throw DomainError("combine: inner functions differ");
  std::vector<cplx> anchors = f.anchors();
  anchors.insert(anchors.end(), g.anchors().begin(), g.anchors().end());
  std::vector<cplx> coeffs;
  for (const auto& a : f.coefficients()) coeffs.push_back(alpha * a);
  for (const auto& b : g.coefficients()) coeffs.push_back(beta * b);
  return KernelCombination(f.spec(), std::move(anchors), std::move(coeffs),
                           std::min(f.vanishing_moments(), g.vanishing_moments()));
}

KernelCombination dilate(const KernelCombination& f, double s) {
  // k_w(x / s) = s k_{s w}(x) for the dilated inner function; the moment
  // conditions are preserved because the moments only rescale.
  std::vector<cplx> anchors = f.anchors();
  for (auto& w : anchors) w *= s;
  std::vector<cplx> coeffs = f.coefficients();
  for (auto& a : coeffs) a *= s;
  return KernelCombination(dilate(f.spec(), s), std::move(anchors), std::move(coeffs),
                           f.vanishing_moments());
}

KernelCombination random_model_function(const InnerFunction& spec, int count, std::uint64_t seed,
                                        int vanishing_moments) {
  if (count < 1) throw DomainError("random_model_function: count must be >= 1");
  if (vanishing_moments < 0) throw DomainError("random_model_function: vanishing_moments must be >= 0");
  if (count <= 2 * vanishing_moments)
    throw DomainError("random_model_function: need count > 2 * vanishing_moments");
  Rng rng(seed);
  std::vector<cplx> anchors(static_cast<std::size_t>(count));
  for (auto& w : anchors) {
    const double re = rng.uniform(-5.0, 5.0);
    const double im = rng.uniform(0.2, 3.0);
    w = cplx(re, im);
  }
  const int free_dims = count - 2 * vanishing_moments;
  std::vector<cplx> gauss(static_cast<std::size_t>(free_dims));
  for (auto& g : gauss) {
    const double re = rng.normal();
    const double im = rng.normal();
    g = cplx(re, im);
  }

  std::vector<cplx> coeffs(static_cast<std::size_t>(count));
  if (vanishing_moments == 0) {
    coeffs = gauss;
  } else {
    const int q = vanishing_moments;
    Eigen::MatrixXcd A(2 * q, count);
    for (int j = 0; j < count; ++j) {
      const cplx wbar = std::conj(anchors[static_cast<std::size_t>(j)]);
      const cplx beta = std::conj(spec(anchors[static_cast<std::size_t>(j)]));
      cplx power = 1.0;
      for (int k = 0; k < q; ++k) {
        A(k, j) = power;
        A(q + k, j) = beta * power;
        power *= wbar;
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const Eigen::MatrixXcd null_basis = svd.matrixV().rightCols(free_dims);
    Eigen::VectorXcd g(free_dims);
    for (int i = 0; i < free_dims; ++i) g(i) = gauss[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd alpha = null_basis * g;
    for (int j = 0; j < count; ++j) coeffs[static_cast<std::size_t>(j)] = alpha(j);
  }

  KernelCombination raw(spec, anchors, coeffs, vanishing_moments);
  const double norm = raw.l2_norm();
  if (!(norm > 0.0)) throw DomainError("random_model_function: generated a zero function");
  return raw.scaled(1.0 / norm);
}

std::vector<KernelCombination> make_corpus(const InnerFunction& spec, int size, std::uint64_t seed,
                                           int count, int vanishing_moments, unsigned threads) {
  if (size < 0) throw DomainError("make_corpus: size must be >= 0");
  std::vector<std::optional<KernelCombination>> slots(static_cast<std::size_t>(size));
  parallel_for(slots.size(), threads, [&](std::size_t i) {
    slots[i].emplace(random_model_function(spec, count, corpus_seed(seed, i), vanishing_moments));
  });
  std::vector<KernelCombination> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

GridFunction lp_grid(const KernelCombination& f, double p, double rel_tol) {
  auto g = [&f](double x) { return f(x); };
  GridFunction out = certified_grid(f, g, f.value_envelope(), p, rel_tol);
  out.eval = [f](double x) { return f(x); };
  return out;
}

GridFunction derivative_lp_grid(const KernelCombination& f, double p, double rel_tol) {
  auto g = [&f](double x) { return f.derivative(x); };
  GridFunction out = certified_grid(f, g, f.derivative_envelope(), p, rel_tol);
  out.eval = [f](double x) { return f.derivative(x); };
  return out;
}

double lp_norm(const KernelCombination& f, double p) {
  if (p == 2.0) return f.l2_norm();
  return lp_grid(f, p).norm();
}

double derivative_lp_norm(const KernelCombination& f, double p) {
  return derivative_lp_grid(f, p).norm();
}

cplx derivative(const KernelCombination& f, double x) { return f.derivative(x); }

std::pair<double, double> bernstein_check(const KernelCombination& f, double p) {
  return {derivative_lp_norm(f, p), f.theta_prime_sup() * lp_norm(f, p)};
}

std::pair<double, double> sup_sample_check(const KernelCombination& f, double delta, double p) {
  if (!(delta > 0.0) || !(p >= 1.0))
    throw DomainError("sup_sample_check: requires delta > 0 and p >= 1");
  const double norm = lp_norm(f, p);
  const double dnorm = derivative_lp_norm(f, p);
  const double right = std::pow(delta, -1.0 / p) * norm + std::pow(delta, 1.0 - 1.0 / p) * dnorm;

  // Windows past radius R carry at most C^p (R^{-sp} + R^{1-sp} / (delta (sp - 1)))
  // per side, where |f| <= C / |x|^s.
  const double s = f.vanishing_moments() + 1.0;
  const double C = f.value_envelope();
  if (!(s * p > 1.0)) throw DomainError("sup_sample_check: f is not certified in L^p");
  auto tail = [&](double R) {
    return 2.0 * std::pow(C, p) *
           (std::pow(R, -s * p) + std::pow(R, 1.0 - s * p) / (delta * (s * p - 1.0)));
  };
  const double target = 1e-12 * std::pow(norm, p) / delta;
  double R = std::max(near_radius(f), f.envelope_radius());
  while (tail(R) > target && R < kMaxRadius) R *= 1.5;
  if (tail(R) > target) throw ConvergenceError("sup_sample_check: tail not certified by R = 1e6");

  const long k_lo = static_cast<long>(std::floor(-R / delta));
  const long k_hi = static_cast<long>(std::ceil(R / delta));
  const double h = std::min(delta, f.feature_scale()) / 16.0;
  const int samples = std::max(16, static_cast<int>(std::ceil(delta / h)));
  double sum = 0.0;
  for (long k = k_lo; k < k_hi; ++k) {
    const double a = static_cast<double>(k) * delta;
    const double step = delta / samples;
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i <= samples; ++i) {
      // The last sample sits just inside the half-open window.
      const double x = (i == samples) ? std::nextafter(a + delta, a) : a + i * step;
      const double v = std::abs(f(x));
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    const double lo = a + std::max(0, best_i - 1) * step;
    const double hi = std::min(a + (best_i + 1) * step, std::nextafter(a + delta, a));
    if (hi > lo) {
      auto neg = [&](double x) { return -std::abs(f(x)); };
      const auto [x_star, v] = boost::math::tools::brent_find_minima(neg, lo, hi, 40);
      (void)x_star;
      best = std::max(best, -v);
    }
    sum += std::pow(best, p);
  }
  sum += tail(R);
  return {std::pow(sum, 1.0 / p), right};
}

namespace {

template <class G>
cplx kernel_weighted_integral(const KernelCombination& f, double x, G&& integrand) {
  // |f(t)| <= C / |t|^s and |k(t)| <= 2 / (pi |t|) for |t| >= max(R0, 2|x|).
  const double s = f.vanishing_moments() + 1.0;
  const double coeff = 2.0 * 2.0 * kPi * f.value_envelope() * 4.0 / (kPi * kPi * (s + 1.0));
  double R = std::max({near_radius(f), 2.0 * std::abs(x) + 1.0});
  R = std::max(R, std::pow(coeff / 1e-13, 1.0 / (s + 1.0)));
  R = std::min(R, kMaxRadius);
  const double h_near = 0.5 * f.feature_scale();
  const double near = near_radius(f) + std::abs(x);
  const double oscillation = 2.0 * kPi / std::max(f.theta_prime_sup(), 1e-12);
  const auto breaks = panel_breaks(near, h_near, oscillation, std::max(R, near));
  quad::Options opts;
  opts.rel_tol = 1e-11;
  opts.abs_tol = 1e-14;
  return quad::integrate<cplx>(integrand, breaks, opts).value;
}

}  // namespace

cplx derivative_by_kernel_integral(const KernelCombination& f, double x) {
  const auto& spec = f.spec();
  auto integrand = [&](double t) {
    const cplx k = boundary_kernel(spec, t, x);
    return f(t) * k * k;
  };
  return 2.0 * kPi * kI * kernel_weighted_integral(f, x, integrand);
}

cplx reproduce_by_quadrature(const KernelCombination& f, double x) {
  const auto& spec = f.spec();
  auto integrand = [&](double t) { return f(t) * std::conj(boundary_kernel(spec, x, t)); };
  return kernel_weighted_integral(f, x, integrand);
}

}  // namespace mspace
