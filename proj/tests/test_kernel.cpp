#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mspace/errors.hpp"
#include "mspace/kernel.hpp"
#include "mspace/rng.hpp"

using namespace mspace;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson on [-R, R] with n panels, Richardson-extrapolated from
// n and 2n, plus the averaged tail 2 * (3/8) / (3 R^3) of sin^4 / x^4.
double sinc4_oracle() {
  const double R = 2000.0;
  auto f = [](double x) {
    if (x == 0.0) return 1.0;
    const double s = std::sin(x) / x;
    return s * s * s * s;
  };
  auto simpson = [&](long n) {
    const double h = 2.0 * R / n;
    double sum = f(-R) + f(R);
    for (long i = 1; i < n; ++i) sum += f(-R + i * h) * ((i % 2) ? 4.0 : 2.0);
    return sum * h / 3.0;
  };
  const double s1 = simpson(400000), s2 = simpson(800000);
  return (16.0 * s2 - s1) / 15.0 + 0.25 / (R * R * R);
}

}  // namespace

TEST_CASE("sinc examples") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(kPi)) < 1e-15);
  CHECK(sinc(kPi / 2) == doctest::Approx(2 / kPi).epsilon(1e-15));
  // Taylor branch meets the direct formula
  CHECK(std::abs(sinc(0.99e-4) - std::sin(0.99e-4) / 0.99e-4) < 3e-16);
  CHECK(std::abs(sinc(1.01e-4) - sinc(0.99e-4)) < 1e-8);
}

TEST_CASE("xi envelope on a dense grid") {
  for (double x = -200.0; x <= 200.0; x += 0.01)
    CHECK(std::abs(sinc(x)) <= std::min(1.0, 1.0 / std::abs(x)) + 1e-16);
}

TEST_CASE("reproducing_kernel examples") {
  const InnerFunction trivial(0, 0);
  CHECK(std::abs(reproducing_kernel(trivial, {0.3, 1}, {-1, 0.5})) == 0.0);
  const InnerFunction b(0, 0, {{0, 1, 1}});
  const cplx k = reproducing_kernel(b, {0, 1}, {0, 1});
  CHECK(std::abs(k - 1.0 / (4 * kPi)) < 1e-15);
  CHECK_THROWS_AS(reproducing_kernel(b, {0.5, 0}, {0.5, 0}), DomainError);
  CHECK_THROWS_AS(reproducing_kernel(b, {0.5, -1}, {0.5, 0}), DomainError);
}

TEST_CASE("diagonal formula in the upper half-plane") {
  const InnerFunction f(0.3, 1.2, {{0.5, 0.7, 1}, {-1, 2, 2}});
  for (cplx z : {cplx(0, 1), cplx(2, 0.1), cplx(-3, 4)}) {
    const cplx k = reproducing_kernel(f, z, z);
    CHECK(std::abs(k.imag()) < 1e-15);
    CHECK(k.real() == doctest::Approx((1 - std::norm(f(z))) / (4 * kPi * z.imag())).epsilon(1e-13));
  }
}

TEST_CASE("kernel_norm_sq examples") {
  CHECK(kernel_norm_sq(InnerFunction(0, 2 * kPi), 1.7) == doctest::Approx(1.0).epsilon(1e-15));
  const InnerFunction b(0, 0, {{0, 1, 1}});
  CHECK(kernel_norm_sq(b, 0) == doctest::Approx(1 / kPi).epsilon(1e-15));
  const double eps = 1e-7;
  const cplx lim = reproducing_kernel(b, {0, eps}, {0, eps});
  CHECK(std::abs(lim.real() - 1 / kPi) < 1e-6);
  for (double x : {-4.0, 0.0, 9.0})
    CHECK(kernel_norm_sq(InnerFunction(0, 2 * 1.5), x) == doctest::Approx(1.5 / kPi).epsilon(1e-15));
}

TEST_CASE("boundary kernel: bounds, symmetry and limits") {
  Rng rng(7);
  for (int s = 0; s < 10; ++s) {
    const InnerFunction f(rng.uniform(-1, 1), rng.uniform(0.1, 3),
                          {{rng.uniform(-3, 3), rng.uniform(0.2, 2), 1},
                           {rng.uniform(-3, 3), rng.uniform(0.2, 2), 2}});
    const double sup = derivative_sup_norm(f);
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(-20, 20), t = rng.uniform(-20, 20);
      const cplx k = reproducing_kernel(f, x, t);
      const double px = f.phase(x).derivative, pt = f.phase(t).derivative;
      CHECK(std::abs(k) <= std::sqrt(px * pt) / (2 * kPi) + 1e-12);
      CHECK(std::abs(k) / std::sqrt(kernel_norm_sq(f, x)) <= std::sqrt(sup / (2 * kPi)) + 1e-12);
      CHECK(std::abs(k - std::conj(reproducing_kernel(f, t, x))) < 1e-15);
      // agrees with the direct formula away from the diagonal
      const cplx direct = cplx(0, 1) / (2 * kPi) * (1.0 - std::conj(f(x)) * f(t)) / (t - x);
      CHECK(std::abs(k - direct) < 1e-12);
      const cplx zw = reproducing_kernel(f, {x, rng.uniform(0, 2)}, {t, rng.uniform(0, 2)});
      (void)zw;
    }
    // continuity at the diagonal
    const double x = rng.uniform(-5, 5);
    CHECK(std::abs(boundary_kernel(f, x, x + 1e-9) - kernel_norm_sq(f, x)) < 1e-6);
    CHECK(boundary_kernel(f, x, x) == kernel_norm_sq(f, x));
  }
  const InnerFunction f(0, 1, {{0, 1, 1}});
  const cplx z(0.4, 0.8), w(-1.1, 0.3);
  CHECK(std::abs(reproducing_kernel(f, z, w) - std::conj(reproducing_kernel(f, w, z))) < 1e-15);
}

TEST_CASE("pw_oversample_kernel examples") {
  for (double t : {-3.0, 0.0, 0.7, 12.0}) {
    const SincKernelSpec shannon{0, 0.3, 1.4};
    CHECK(pw_oversample_kernel(shannon, t) == doctest::Approx(sinc(1.4 * t)).epsilon(1e-15));
  }
  const SincKernelSpec k{2, 1.0, 2.0};
  CHECK(k.band() == 6.0);
  CHECK(pw_oversample_kernel(k, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const double bound = (4.0 / 6.0) / (1.0 * 4.0) * std::pow(10.0, -3.0);
  CHECK(std::abs(pw_oversample_kernel(k, 10.0)) <= bound);
  for (double t = 1.0; t < 200.0; t += 0.37)
    CHECK(std::abs(pw_oversample_kernel(k, t)) <= (4.0 / 6.0) / (1.0 * 4.0) / (t * t * t));
  CHECK_THROWS_AS((SincKernelSpec{-1, 1, 1}).validate(), DomainError);
  CHECK_THROWS_AS((SincKernelSpec{1, 0, 1}).validate(), DomainError);
}

TEST_CASE("xi_product_integral against the Simpson oracle") {
  const double oracle = sinc4_oracle();
  CHECK(std::abs(oracle - 2 * kPi / 3) < 1e-9);
  const double v = xi_product_integral(0, 0);
  CHECK(std::abs(v - oracle) < 1e-8);
  CHECK(v <= xi_product_bound(0, 0));
  CHECK(xi_product_bound(0, 0) == doctest::Approx(2 * kPi));
  CHECK(xi_product_integral(0, 20) <= 8 * kPi / 404);
  CHECK(xi_product_integral(3, -17) <= xi_product_bound(3, -17));
  // translation invariance
  CHECK(std::abs(xi_product_integral(1.5, 4.0) - xi_product_integral(0.0, 2.5)) < 2e-9);
}

TEST_CASE("higher-power bound at m = 2 and tabulated constants") {
  CHECK(xi_power_constant(2) == doctest::Approx(std::sqrt(kPi) * 32 * std::tgamma(1.5) / std::tgamma(2.0)));
  CHECK(xi_power_constant(3) == doctest::Approx(std::sqrt(kPi) * 128 * std::tgamma(2.5) / std::tgamma(3.0)));
  CHECK_THROWS_AS(xi_power_constant(4), DomainError);
  Rng rng(99);
  for (int i = 0; i < 10; ++i) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
    CHECK(xi_power_product_integral(a, b, 2) <= xi_power_bound(a, b, 2));
  }
}
