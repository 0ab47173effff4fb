#include "mspace/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "mspace/clark.hpp"
#include "mspace/errors.hpp"
#include "mspace/kernel.hpp"
#include "mspace/quadrature.hpp"

namespace mspace {

namespace {

constexpr double kPi = std::numbers::pi;

struct Window {
  double lo;
  double hi;
};

}  // namespace

MeasureSpec::MeasureSpec(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (const auto& a : atoms_)
    if (!(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.x))
      throw DomainError("measure: atoms need a finite position and mass > 0");
  for (const auto& p : pieces_)
    if (!(p.l < p.r) || !(p.h >= 0.0) || !std::isfinite(p.l) || !std::isfinite(p.r) ||
        !std::isfinite(p.h))
      throw DomainError("measure: density pieces need l < r and height >= 0");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::sort(pieces_.begin(), pieces_.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.l < b.l; });
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (pieces_[i].l < pieces_[i - 1].r)
      throw DomainError("measure: density pieces must have disjoint interiors");
  atom_prefix_.assign(atoms_.size() + 1, 0.0);
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    atom_prefix_[i + 1] = atom_prefix_[i] + atoms_[i].mass;
}

double MeasureSpec::mass(double l, double r) const {
  if (r < l) return 0.0;
  auto first = std::lower_bound(atoms_.begin(), atoms_.end(), l,
                                [](const Atom& a, double v) { return a.x < v; });
  auto last = std::upper_bound(atoms_.begin(), atoms_.end(), r,
                               [](double v, const Atom& a) { return v < a.x; });
  double total = atom_prefix_[static_cast<std::size_t>(last - atoms_.begin())] -
                 atom_prefix_[static_cast<std::size_t>(first - atoms_.begin())];
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), l,
                             [](double v, const DensityPiece& p) { return v < p.r; });
  for (; it != pieces_.end() && it->l < r; ++it)
    total += it->h * std::max(0.0, std::min(it->r, r) - std::max(it->l, l));
  return total;
}

std::pair<double, double> MeasureSpec::support_hull() const {
  if (empty()) throw DomainError("support_hull: empty measure");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (!atoms_.empty()) {
    lo = atoms_.front().x;
    hi = atoms_.back().x;
  }
  for (const auto& p : pieces_) {
    if (p.h == 0.0) continue;
    lo = std::min(lo, p.l);
    hi = std::max(hi, p.r);
  }
  if (lo > hi) throw DomainError("support_hull: measure has no mass");
  return {lo, hi};
}

std::vector<double> MeasureSpec::breakpoints() const {
  std::vector<double> out;
  out.reserve(atoms_.size() + 2 * pieces_.size());
  for (const auto& a : atoms_) out.push_back(a.x);
  for (const auto& p : pieces_) {
    out.push_back(p.l);
    out.push_back(p.r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MeasureSpec dilate(const MeasureSpec& mu, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("dilate: alpha must be > 0");
  std::vector<Atom> atoms = mu.atoms();
  for (auto& a : atoms) a.x *= alpha;
  std::vector<DensityPiece> pieces = mu.pieces();
  for (auto& p : pieces) {
    p.l *= alpha;
    p.r *= alpha;
    p.h /= alpha;
  }
  return MeasureSpec(std::move(atoms), std::move(pieces));
}

DensityReport d_mu(const MeasureSpec& mu, double delta) {
  if (!(delta > 0.0)) throw DomainError("d_mu: delta must be > 0");
  DensityReport best{delta, 0.0, 0.0, delta};
  double best_mass = 0.0;
  // The window mass is piecewise linear in the left endpoint with breaks only
  // where an endpoint meets an atom or a piece endpoint, so the sup is attained
  // by a window with one endpoint on a breakpoint.
  for (double e : mu.breakpoints()) {
    for (const Window w : {Window{e, e + delta}, Window{e - delta, e}}) {
      const double m = mu.mass(w.lo, w.hi);
      if (m > best_mass) {
        best_mass = m;
        best.witness_lo = w.lo;
        best.witness_hi = w.hi;
      }
    }
  }
  best.value = best_mass / delta;
  return best;
}

DensityReport d_mu_theta(const MeasureSpec& mu, const InnerFunction& spec, double delta) {
  if (!(delta > 0.0)) throw DomainError("d_mu_theta: delta must be > 0");
  if (!(spec.c() > 0.0))
    throw DomainError("d_mu_theta: unsupported inner function, requires exponential type c > 0");
  DensityReport best{delta, 0.0, 0.0, 0.0};
  if (mu.empty()) return best;
  const auto [supp_lo, supp_hi] = mu.support_hull();

  auto right_of = [&](double a) { return invert_phase(spec, spec.phase(a).value + delta); };
  auto left_of = [&](double b) { return invert_phase(spec, spec.phase(b).value - delta); };
  auto consider = [&](double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    const double r = mu.mass(lo, hi) / (hi - lo);
    if (r > best.value) {
      best.value = r;
      best.witness_lo = lo;
      best.witness_hi = hi;
    }
    return r;
  };

  for (double e : mu.breakpoints()) {
    consider(e, right_of(e));
    consider(left_of(e), e);
  }

  // Between breakpoint events the ratio is smooth in the left endpoint;
  // sample it and polish local maxima.
  const double max_len = delta / spec.c();
  const double lo = supp_lo - max_len;
  const double hi = supp_hi;
  double step = delta / derivative_sup_norm(spec);
  for (const auto& p : mu.pieces()) step = std::min(step, p.r - p.l);
  step = std::min(step, std::max(hi - lo, 1e-12)) / 8.0;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  std::vector<double> grid(n + 1), value(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid[i] = (i == n) ? hi : lo + static_cast<double>(i) * step;
    value[i] = consider(grid[i], right_of(grid[i]));
  }
  for (std::size_t i = 1; i < n; ++i) {
    const bool peak = value[i] >= value[i - 1] && value[i] >= value[i + 1] &&
                      (value[i] > value[i - 1] || value[i] > value[i + 1]);
    if (!peak) continue;
    auto negated = [&](double a) {
      const double b = right_of(a);
      return -mu.mass(a, b) / (b - a);
    };
    const auto [a_star, neg] =
        boost::math::tools::brent_find_minima(negated, grid[i - 1], grid[i + 1], 40);
    (void)neg;
    consider(a_star, right_of(a_star));
  }
  return best;
}

double donoho_logan_bound_p2(double c, double delta, double d) {
  if (!(c > 0.0) || !(delta > 0.0) || !(d >= 0.0))
    throw DomainError("donoho_logan_bound_p2: requires c > 0, delta > 0, d >= 0");
  return (1.0 + c * delta / kPi) * d;
}

double donoho_logan_bound_p1(double c, double delta, double d) {
  if (!(c > 0.0) || !(delta > 0.0) || !(d >= 0.0))
    throw DomainError("donoho_logan_bound_p1: requires c > 0, delta > 0, d >= 0");
  const double s = sinc(0.5 * c * delta);
  if (!(c * delta < 2.0 * kPi) || !(s > 0.0))
    throw DomainError("donoho_logan_bound_p1: requires c delta < 2 pi");
  return d / s;
}

double model_sieve_bound(const InnerFunction& spec, double delta, double d, double p) {
  if (!(p >= 1.0)) throw DomainError("model_sieve_bound: p must be >= 1");
  if (!(delta > 0.0)) throw DomainError("model_sieve_bound: delta must be > 0");
  return std::pow(1.0 + delta * derivative_sup_norm(spec), p) * d;
}

double nyquist_density(const std::vector<std::pair<double, double>>& set_pieces, double c) {
  if (!(c > 0.0)) throw DomainError("nyquist_density: c must be > 0");
  std::vector<DensityPiece> pieces;
  pieces.reserve(set_pieces.size());
  for (const auto& [l, r] : set_pieces) pieces.push_back({l, r, 1.0});
  const double delta = 1.0 / (2.0 * c);
  return 2.0 * c * delta * d_mu(MeasureSpec({}, std::move(pieces)), delta).value;
}

double empirical_embedding_ratio(const GridFunction& f, const MeasureSpec& mu, double p) {
  if (!(p >= 1.0)) throw DomainError("empirical_embedding_ratio: p must be >= 1");
  if (p != f.p) throw DomainError("empirical_embedding_ratio: grid function was built for another p");
  if (!(f.norm_pow() > 0.0)) throw DomainError("empirical_embedding_ratio: f has zero norm");
  double num = 0.0;
  for (const auto& a : mu.atoms()) num += a.mass * std::pow(std::abs(f.eval(a.x)), p);
  for (const auto& piece : mu.pieces()) {
    if (piece.h == 0.0) continue;
    auto integrand = [&](double x) { return std::pow(std::abs(f.eval(x)), p); };
    const auto breaks = quad::uniform_breaks(piece.l, piece.r, 0.25);
    quad::Options opts;
    opts.rel_tol = 1e-12;
    const auto r = quad::integrate<double>(integrand, breaks, opts);
    num += piece.h * r.value;
  }
  return num / f.norm_pow();
}

}  // namespace mspace
