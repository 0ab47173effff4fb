#pragma once

#include <utility>
#include <vector>

#include "mspace/grid_function.hpp"
#include "mspace/inner_function.hpp"

namespace mspace {

struct Atom {
  double x = 0.0;
  double mass = 1.0;
};

/// Constant density `h` on [l, r).
struct DensityPiece {
  double l = 0.0;
  double r = 1.0;
  double h = 1.0;
};

/// Positive measure: point masses plus a piecewise-constant density.
/// Pieces are stored sorted by left endpoint and must not overlap.
class MeasureSpec {
 public:
  MeasureSpec() = default;
  MeasureSpec(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }

  /// mu([l, r]) (closed: atoms at either endpoint count).
  double mass(double l, double r) const;
  /// Smallest and largest point of the support hull.
  std::pair<double, double> support_hull() const;
  /// Atom positions and piece endpoints, sorted and deduplicated.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Atom> atoms_;  // sorted by position
  std::vector<DensityPiece> pieces_;
  std::vector<double> atom_prefix_;  // atom_prefix_[i] = mass of atoms_[0..i)
};

/// mu_alpha(A) = mu(A / alpha).
MeasureSpec dilate(const MeasureSpec& mu, double alpha);

struct DensityReport {
  double delta = 0.0;
  double value = 0.0;
  double witness_lo = 0.0;
  double witness_hi = 0.0;
};

/// sup_x mu([x, x + delta]) / delta, exact for this measure class.
DensityReport d_mu(const MeasureSpec& mu, double delta);

/// sup of mu(I) / |I| over closed I = [a, b] with phi(b) - phi(a) = delta.
/// Requires c > 0. The reported value is attained by the witness interval.
DensityReport d_mu_theta(const MeasureSpec& mu, const InnerFunction& spec, double delta);

/// (1 + c delta / pi) d
double donoho_logan_bound_p2(double c, double delta, double d);
/// d / sinc(c delta / 2); requires c delta < 2 pi.
double donoho_logan_bound_p1(double c, double delta, double d);
/// (1 + delta ||Theta'||_inf)^p d
double model_sieve_bound(const InnerFunction& spec, double delta, double d, double p);

/// sup_x 2c |T cap [x, x + 1/(2c)]| for T a finite union of intervals [l, r).
double nyquist_density(const std::vector<std::pair<double, double>>& set_pieces, double c);

/// (integral of |f|^p d mu) / ||f||_p^p.
double empirical_embedding_ratio(const GridFunction& f, const MeasureSpec& mu, double p);

}  // namespace mspace
