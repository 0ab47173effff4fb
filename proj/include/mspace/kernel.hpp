#pragma once

#include "mspace/inner_function.hpp"

namespace mspace {

/// sin(t) / t with the removable singularity filled in.
double sinc(double t);

/// k_z(w) = (i / 2 pi) (1 - conj(Theta(z)) Theta(w)) / (w - conj(z)).
///
/// Both points must satisfy Im >= 0. The real diagonal z == w is rejected
/// (use kernel_norm_sq). When both points are real the value is computed from
/// the phase increment, which stays accurate as w approaches z.
cplx reproducing_kernel(const InnerFunction& theta, cplx z, cplx w);

/// k_x(t) for real x, t including t == x (where it equals ||k_x||^2).
cplx boundary_kernel(const InnerFunction& theta, double x, double t);

/// ||k_x||^2 = phi'(x) / (2 pi).
double kernel_norm_sq(const InnerFunction& theta, double x);

/// Smoothing parameters of the oversampled Paley-Wiener kernel: the band
/// edge c, N-fold convolution of a box of half-width a. Sampling band
/// b = c + 2 N a.
struct SincKernelSpec {
  int N = 0;
  double a = 1.0;
  double c = 1.0;

  double band() const { return c + 2.0 * N * a; }
  void validate() const;
};

/// (c + N a) / b * sinc(a t)^N * sinc((c + N a) t), the sample weight
/// (1 / 2b) * gamma_hat(t) for gamma = psi^(N) * 1_[-(c+Na), c+Na].
double pw_oversample_kernel(const SincKernelSpec& k, double t);

/// Integral over R of sinc(x - a)^2 sinc(x - b)^2, absolute error <= 1e-9.
double xi_product_integral(double a, double b);

/// Integral over R of sinc(x - a)^{2m} sinc(x - b)^{2m}, absolute error <= 1e-9.
double xi_power_product_integral(double a, double b, int m);

/// 8 pi / (4 + (a - b)^2).
double xi_product_bound(double a, double b);

/// sqrt(pi) 2^{2m+1} Gamma(m - 1/2) / Gamma(m) for m in {2, 3}, from the
/// closed forms 16 pi and 48 pi.
double xi_power_constant(int m);

/// xi_power_constant(m) / (1 + (a - b)^2)^m.
double xi_power_bound(double a, double b, int m);

}  // namespace mspace
