#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mspace/inner_function.hpp"

namespace mspace {

/// A function sampled on the abscissae of an adaptive quadrature of |f|^p
/// over [lo, hi], together with the certified bound on the omitted mass
/// outside [lo, hi].
struct GridFunction {
  double lo = 0.0;
  double hi = 0.0;
  double p = 2.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<cplx> values;
  double interior = 0.0;          // quadrature of |f|^p over [lo, hi]
  double quadrature_error = 0.0;  // estimated absolute error of `interior`
  double tail_bound = 0.0;        // bound on the integral of |f|^p outside [lo, hi]
  std::function<cplx(double)> eval;

  /// ||f||_p^p (interior value; the tail is reported separately).
  double norm_pow() const { return interior; }
  double norm() const { return std::pow(interior, 1.0 / p); }
  bool tail_certified(double rel = 1e-8) const { return tail_bound < rel * interior; }
};

}  // namespace mspace
