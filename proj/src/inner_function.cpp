#include "mspace/inner_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mspace/errors.hpp"

namespace mspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// d/dx of a single Blaschke factor's phase derivative, times multiplicity.
double bump_slope(const BlaschkeZero& z, double x) {
  const double d = x - z.re;
  const double q = d * d + z.im * z.im;
  return -4.0 * z.multiplicity * z.im * d / (q * q);
}

}  // namespace

InnerFunction::InnerFunction(double tau, double c, std::vector<BlaschkeZero> zeros)
    : tau_(tau), c_(c), zeros_(std::move(zeros)) {
  if (!std::isfinite(tau_)) throw DomainError("inner function: tau must be finite");
  if (!(c_ >= 0.0) || !std::isfinite(c_))
    throw DomainError("inner function: exponential type c must be finite and >= 0");
  for (const auto& z : zeros_) {
    if (!(z.im > 0.0) || !std::isfinite(z.im) || !std::isfinite(z.re))
      throw DomainError("inner function: Blaschke zero must lie in the open upper half-plane, got " +
                        std::to_string(z.re) + " + " + std::to_string(z.im) + "i");
    if (z.multiplicity < 1)
      throw DomainError("inner function: zero multiplicity must be >= 1");
  }
}

int InnerFunction::zero_count() const {
  int n = 0;
  for (const auto& z : zeros_) n += z.multiplicity;
  return n;
}

cplx InnerFunction::operator()(cplx z) const {
  // e^{i tau} e^{i c z} = exp(-c Im z) * e^{i (tau + c Re z)}
  cplx value = std::polar(std::exp(-c_ * z.imag()), tau_ + c_ * z.real());
  for (const auto& zero : zeros_) {
    const cplx lambda(zero.re, zero.im);
    const cplx factor = (z - lambda) / (z - std::conj(lambda));
    for (int k = 0; k < zero.multiplicity; ++k) value *= factor;
  }
  return value;
}

PhaseValue InnerFunction::phase(double x) const {
  PhaseValue out{tau_ + c_ * x, c_};
  for (const auto& z : zeros_) {
    const double d = x - z.re;
    out.value -= 2.0 * z.multiplicity * std::atan2(z.im, d);
    out.derivative += 2.0 * z.multiplicity * z.im / (d * d + z.im * z.im);
  }
  return out;
}

double InnerFunction::phase_difference(double x, double t) const {
  double diff = c_ * (t - x);
  for (const auto& z : zeros_) {
    // atan2(v, a) - atan2(v, b) = arg((a + iv)(b - iv)) with a = t - u, b = x - u.
    const double a = t - z.re;
    const double b = x - z.re;
    diff -= 2.0 * z.multiplicity * std::atan2(z.im * (b - a), a * b + z.im * z.im);
  }
  return diff;
}

double InnerFunction::phase_second_derivative(double x) const {
  double s = 0.0;
  for (const auto& z : zeros_) s += bump_slope(z, x);
  return s;
}

cplx evaluate(const InnerFunction& theta, cplx z) {
  if (z.imag() < 0.0) throw DomainError("evaluate: Im z must be >= 0");
  return theta(z);
}

PhaseValue phase(const InnerFunction& theta, double x) { return theta.phase(x); }

double derivative_sup_norm(const InnerFunction& theta) {
  const auto& zeros = theta.zeros();
  if (zeros.empty()) return theta.c();

  double umin = zeros.front().re, umax = umin;
  double vmin = zeros.front().im, vmax = vmin;
  for (const auto& z : zeros) {
    umin = std::min(umin, z.re);
    umax = std::max(umax, z.re);
    vmin = std::min(vmin, z.im);
    vmax = std::max(vmax, z.im);
  }
  const double lo = umin - 10.0 * vmax;
  const double hi = umax + 10.0 * vmax;
  const double step = vmin / 4.0;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));

  auto slope = [&](double x) { return theta.phase_second_derivative(x); };
  double best = theta.c();
  double prev_x = lo;
  double prev_s = slope(lo);
  best = std::max(best, theta.phase(lo).derivative);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + static_cast<double>(i) * step;
    const double s = slope(x);
    best = std::max(best, theta.phase(x).derivative);
    if (prev_s > 0.0 && s <= 0.0) {
      // local maximum of phi' inside [prev_x, x]
      double a = prev_x, b = x;
      while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        (slope(m) > 0.0 ? a : b) = m;
      }
      best = std::max(best, theta.phase(0.5 * (a + b)).derivative);
    }
    prev_x = x;
    prev_s = s;
  }
  return best;
}

InnerFunction enlarge(const InnerFunction& theta, double extra_c,
                      const std::vector<BlaschkeZero>& extra_zeros) {
  if (!(extra_c >= 0.0)) throw DomainError("enlarge: extra_c must be >= 0");
  std::vector<BlaschkeZero> zeros = theta.zeros();
  for (const auto& z : extra_zeros) {
    auto it = std::find_if(zeros.begin(), zeros.end(),
                           [&](const BlaschkeZero& w) { return w.re == z.re && w.im == z.im; });
    if (it != zeros.end())
      it->multiplicity += z.multiplicity;
    else
      zeros.push_back(z);
  }
  return InnerFunction(theta.tau(), theta.c() + extra_c, std::move(zeros));
}

InnerFunction dilate(const InnerFunction& theta, double scale) {
  if (!(scale > 0.0)) throw DomainError("dilate: scale must be > 0");
  std::vector<BlaschkeZero> zeros = theta.zeros();
  for (auto& z : zeros) {
    z.re *= scale;
    z.im *= scale;
  }
  return InnerFunction(theta.tau(), theta.c() / scale, std::move(zeros));
}

}  // namespace mspace
