#pragma once

#include <complex>
#include <vector>

namespace mspace {

using cplx = std::complex<double>;

/// A zero of a Blaschke factor in the open upper half-plane.
struct BlaschkeZero {
  double re = 0.0;
  double im = 1.0;
  int multiplicity = 1;

  bool operator==(const BlaschkeZero&) const = default;
};

/// Continuous increasing branch of arg Theta(x) and its derivative |Theta'(x)|.
struct PhaseValue {
  double value = 0.0;
  double derivative = 0.0;
};

/// Meromorphic inner function e^{i tau} e^{i c z} B(z) with a finite
/// Blaschke product B. Immutable once constructed.
///
/// Phase convention: each Blaschke factor contributes the continuous branch
/// -2 atan2(Im lambda, x - Re lambda), which tends to 0 as x -> +inf and to
/// -2 pi as x -> -inf. The exponential contributes c x and tau is added as a
/// constant.
class InnerFunction {
 public:
  InnerFunction() = default;
  InnerFunction(double tau, double c, std::vector<BlaschkeZero> zeros = {});

  double tau() const { return tau_; }
  double c() const { return c_; }
  const std::vector<BlaschkeZero>& zeros() const { return zeros_; }

  /// Sum of zero multiplicities.
  int zero_count() const;
  /// True when Theta is a non-constant inner function.
  bool is_nontrivial() const { return c_ > 0.0 || !zeros_.empty(); }

  /// Theta(z) for Im z >= 0.
  cplx operator()(cplx z) const;
  cplx operator()(double x) const { return (*this)(cplx(x, 0.0)); }

  PhaseValue phase(double x) const;
  /// phi(t) - phi(x), computed without cancellation when t is close to x.
  double phase_difference(double x, double t) const;
  /// Second derivative of the phase.
  double phase_second_derivative(double x) const;

  bool operator==(const InnerFunction&) const = default;

 private:
  double tau_ = 0.0;
  double c_ = 0.0;
  std::vector<BlaschkeZero> zeros_;
};

cplx evaluate(const InnerFunction& theta, cplx z);
PhaseValue phase(const InnerFunction& theta, double x);

/// sup over the real line of phi'(x), i.e. the norm of Theta' in L^inf.
double derivative_sup_norm(const InnerFunction& theta);

/// Theta_{extra_c} * B_{extra_zeros} * theta.
InnerFunction enlarge(const InnerFunction& theta, double extra_c,
                      const std::vector<BlaschkeZero>& extra_zeros);

/// theta(z / scale): exponential type divided by scale, zeros multiplied by it.
InnerFunction dilate(const InnerFunction& theta, double scale);

}  // namespace mspace
