#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mspace/grid_function.hpp"
#include "mspace/inner_function.hpp"

namespace mspace {

/// f = sum_j alpha_j k_{w_j} with anchors w_j in the open upper half-plane.
///
/// `vanishing_moments` = q records that sum_j alpha_j conj(w_j)^k and
/// sum_j alpha_j conj(Theta(w_j)) conj(w_j)^k vanish for k < q. Then f and f'
/// decay like |x|^{-(q+1)} on the real line, with explicit constants; q >= 1
/// is what puts f in L^1.
class KernelCombination {
 public:
  KernelCombination(InnerFunction spec, std::vector<cplx> anchors, std::vector<cplx> coefficients,
                    int vanishing_moments = 0);

  const InnerFunction& spec() const { return spec_; }
  const std::vector<cplx>& anchors() const { return anchors_; }
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  int vanishing_moments() const { return vanishing_moments_; }
  double theta_prime_sup() const { return theta_prime_sup_; }

  cplx operator()(double x) const;
  /// f(z) for Im z >= 0.
  cplx operator()(cplx z) const;
  /// Closed-form f'(x) using Theta'(x) = i phi'(x) Theta(x).
  cplx derivative(double x) const;

  /// Exact ||f||_2 from the Gram matrix k_{w_j}(w_k).
  double l2_norm() const;
  /// Moment sums M_k = sum alpha_j conj(w_j)^k and N_k with the extra
  /// factor conj(Theta(w_j)).
  std::pair<cplx, cplx> moments(int k) const;

  /// |f(x)| <= C / |x|^{q+1} for |x| >= envelope_radius().
  double value_envelope() const { return value_envelope_; }
  double derivative_envelope() const { return derivative_envelope_; }
  double envelope_radius() const { return envelope_radius_; }
  /// Length scale of the sharpest feature (used to size quadrature panels).
  double feature_scale() const;

  KernelCombination scaled(cplx s) const;

 private:
  InnerFunction spec_;
  std::vector<cplx> anchors_;
  std::vector<cplx> coefficients_;
  std::vector<cplx> theta_conj_;  // conj(Theta(w_j))
  int vanishing_moments_ = 0;
  double theta_prime_sup_ = 0.0;
  double value_envelope_ = 0.0;
  double derivative_envelope_ = 0.0;
  double envelope_radius_ = 1.0;
};

/// alpha f + beta g (same inner function).
KernelCombination combine(const KernelCombination& f, cplx alpha, const KernelCombination& g,
                          cplx beta);

/// x -> f(x / s), as a kernel combination for the dilated inner function.
KernelCombination dilate(const KernelCombination& f, double s);

/// Random element of the model space: anchors with Re in [-5, 5] and
/// Im in [0.2, 3], complex Gaussian coefficients projected onto the
/// subspace with `vanishing_moments` vanishing moment pairs, normalized to
/// ||f||_2 = 1. Deterministic in seed.
KernelCombination random_model_function(const InnerFunction& spec, int count, std::uint64_t seed,
                                        int vanishing_moments = 0);

/// Corpus of `size` functions seeded from corpus_seed(seed, i).
std::vector<KernelCombination> make_corpus(const InnerFunction& spec, int size, std::uint64_t seed,
                                           int count = 9, int vanishing_moments = 3,
                                           unsigned threads = 1);

/// |f|^p integrated on [-R, R] with R chosen so the certified tail bound is
/// below rel_tol times the integral; throws ConvergenceError past R = 1e6.
GridFunction lp_grid(const KernelCombination& f, double p, double rel_tol = 1e-10);
GridFunction derivative_lp_grid(const KernelCombination& f, double p, double rel_tol = 1e-10);

/// ||f||_p; p == 2 uses the exact Gram form, other p use lp_grid.
double lp_norm(const KernelCombination& f, double p);
double derivative_lp_norm(const KernelCombination& f, double p);

cplx derivative(const KernelCombination& f, double x);

/// (||f'||_p, ||Theta'||_inf ||f||_p).
std::pair<double, double> bernstein_check(const KernelCombination& f, double p);

/// (sum over k of sup_{[k delta, (k+1) delta)} |f|^p)^{1/p} against
/// delta^{-1/p} ||f||_p + delta^{1-1/p} ||f'||_p.
std::pair<double, double> sup_sample_check(const KernelCombination& f, double delta, double p);

/// 2 pi i * integral of f(t) k_t(x)^2 dt, evaluated by quadrature.
cplx derivative_by_kernel_integral(const KernelCombination& f, double x);

/// integral of f(t) conj(k_x(t)) dt, evaluated by quadrature.
cplx reproduce_by_quadrature(const KernelCombination& f, double x);

}  // namespace mspace
