#include "mspace/kernel.hpp"

#include <cmath>
#include <numbers>

#include "mspace/errors.hpp"
#include "mspace/quadrature.hpp"

namespace mspace {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

cplx boundary_kernel(const InnerFunction& theta, double x, double t) {
  if (t == x) return kernel_norm_sq(theta, x);
  // 1 - e^{i d} = -2i sin(d/2) e^{i d/2}, so k_x(t) = sin(d/2) e^{i d/2} / (pi (t - x)).
  const double d = theta.phase_difference(x, t);
  return std::polar(std::sin(0.5 * d) / (kPi * (t - x)), 0.5 * d);
}

cplx reproducing_kernel(const InnerFunction& theta, cplx z, cplx w) {
  if (z.imag() < 0.0 || w.imag() < 0.0)
    throw DomainError("reproducing_kernel: points must lie in the closed upper half-plane");
  if (z.imag() == 0.0 && w.imag() == 0.0) {
    if (z.real() == w.real())
      throw DomainError("reproducing_kernel: real diagonal z == w; use kernel_norm_sq");
    return boundary_kernel(theta, z.real(), w.real());
  }
  const cplx i(0.0, 1.0);
  return i / (2.0 * kPi) * (1.0 - std::conj(theta(z)) * theta(w)) / (w - std::conj(z));
}

double kernel_norm_sq(const InnerFunction& theta, double x) {
  return theta.phase(x).derivative / (2.0 * kPi);
}

void SincKernelSpec::validate() const {
  if (N < 0) throw DomainError("sinc kernel: N must be >= 0");
  if (!(a > 0.0)) throw DomainError("sinc kernel: a must be > 0");
  if (!(c > 0.0)) throw DomainError("sinc kernel: c must be > 0");
}

double pw_oversample_kernel(const SincKernelSpec& k, double t) {
  const double inner = k.c + k.N * k.a;
  double v = inner / k.band() * sinc(inner * t);
  const double s = sinc(k.a * t);
  for (int j = 0; j < k.N; ++j) v *= s;
  return v;
}

double xi_power_product_integral(double a, double b, int m) {
  if (m < 1) throw DomainError("xi_power_product_integral: m must be >= 1");
  const int order = 4 * m;
  // Beyond distance R from the pair, the integrand is below |y|^{-4m}; each
  // tail contributes at most 2 / ((4m - 1) R^{4m-1}) (factor 2 as margin).
  const double tail_target = 1e-10;
  const double R = std::max(
      8.0, std::pow(2.0 / ((order - 1) * tail_target), 1.0 / (order - 1)));
  const double lo = std::min(a, b) - R;
  const double hi = std::max(a, b) + R;
  auto integrand = [&](double x) {
    const double p = sinc(x - a) * sinc(x - b);
    double v = 1.0;
    for (int j = 0; j < 2 * m; ++j) v *= p;
    return v;
  };
  const auto breaks = quad::uniform_breaks(lo, hi, 1.0);
  quad::Options opts;
  opts.abs_tol = 1e-10;
  opts.rel_tol = 0.0;
  const auto r = quad::integrate<double>(integrand, breaks, opts);
  if (!r.converged) throw ConvergenceError("xi_power_product_integral: quadrature did not converge");
  return r.value;
}

double xi_product_integral(double a, double b) { return xi_power_product_integral(a, b, 1); }

double xi_product_bound(double a, double b) {
  const double d = a - b;
  return 8.0 * kPi / (4.0 + d * d);
}

double xi_power_constant(int m) {
  switch (m) {
    case 2:
      return 16.0 * kPi;
    case 3:
      return 48.0 * kPi;
    default:
      throw DomainError("xi_power_constant: only m in {2, 3} is tabulated");
  }
}

double xi_power_bound(double a, double b, int m) {
  const double d = a - b;
  return xi_power_constant(m) / std::pow(1.0 + d * d, m);
}

}  // namespace mspace
