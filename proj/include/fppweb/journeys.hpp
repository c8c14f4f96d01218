#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fppweb/fpp.hpp"
#include "fppweb/path.hpp"
#include "fppweb/rational.hpp"

namespace fppweb {

/// (x, s, sigma, eta) with s < sigma_1 < ... < sigma_k and eta_i in {-1, +1}.
struct Itinerary {
  Rational x;
  Rational s;
  std::vector<Rational> sigma;
  std::vector<int> eta;

  std::size_t k() const { return sigma.size(); }
  /// Throws std::invalid_argument when the ordering or lengths are off.
  void validate() const;
  std::string str() const;
};

Itinerary restrict(const Itinerary& it, std::size_t j);

/// Lattice view of G^n: positions on lattice times ceil(n s)..ceil(n horizon),
/// plus the lattice jump times ceil(n sigma_i).
struct LatticeJourney {
  LatticePath path;
  std::vector<std::int64_t> jump_times;
};

LatticeJourney journey_lattice(const IncrementField& field, const JumpSet& jumps, std::int64_t n,
                               const Itinerary& it, const Rational& horizon, const Window& window);

Path journey(const IncrementField& field, const JumpSet& jumps, std::int64_t n,
             const Itinerary& it, const Rational& horizon, const Window& window);

/// Right (left) Skorokhod reflection of f off g on the common grid:
/// h = f - inf (sup) over [t3, t] of (f - g), t3 the later start.
/// Throws GridMismatch when the grids are incompatible.
Path skorokhod_reflect(const Path& f, const Path& g, Side side);

/// Integer reflection on aligned sequences (same start, same length).
std::vector<std::int64_t> reflect_lattice(const std::vector<std::int64_t>& f,
                                          const std::vector<std::int64_t>& g, Side side);

/// Exact lattice values behind a ReflectionBundle. G, Rext, E live on
/// [t0, t_end]; S, R, I, base on [tk, t_end].
struct LatticeBundle {
  std::int64_t t0 = 0;
  std::int64_t tk = 0;
  int eta = 1;
  std::vector<std::int64_t> G, Rext, E;
  std::vector<std::int64_t> S, R, I, base;
  /// beta_m = G(alpha_m), alpha_m = tk + m.
  std::vector<std::int64_t> beta;

  std::int64_t t_end() const { return t0 + static_cast<std::int64_t>(G.size()) - 1; }
  std::int64_t G_at(std::int64_t t) const { return G[static_cast<std::size_t>(t - t0)]; }
};

struct ReflectionBundle {
  std::int64_t n = 1;
  Path G, S, R, Rext, I, E, base_walk;
  LatticeBundle lattice;
};

ReflectionBundle approximation_bundle(const IncrementField& field, const JumpSet& jumps,
                                      std::int64_t n, const Itinerary& it,
                                      const Rational& horizon, const Window& window);

/// For every m >= 1 with a driving increment, the site driving S differs
/// from the site driving the base walk, with strict ordering oriented by eta_k.
bool check_disjoint_increments(const ReflectionBundle& bundle, std::int64_t n,
                               const Itinerary& it);

/// Lattice window large enough for the distance-<=1 sets of a journey with
/// overwhelming probability (about 10 standard deviations of walk spread).
Window auto_window(const IncrementSpec& spec, const JumpSet& jumps, std::int64_t n,
                   const Itinerary& it, const Rational& horizon);

}  // namespace fppweb
