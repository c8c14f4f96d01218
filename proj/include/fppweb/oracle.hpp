#pragma once

#include <cstdint>
#include <vector>

#include "fppweb/path.hpp"

namespace fppweb {

struct OracleSamples {
  /// Lambda_side(B1, B2)(t) - common start.
  std::vector<double> reflected;
  /// B2(t) (the obstacle) for the same trial.
  std::vector<double> obstacle;
  /// min over the grid of (reflected - B2) for right side, max for left.
  std::vector<double> worst_gap;
};

/// Euler simulation of two independent standard Brownian motions on grid dt,
/// reflected with the discrete formula. Requires dt <= 1e-3 t (throws
/// std::invalid_argument otherwise). Trial r uses its own counter-based
/// stream, so results do not depend on `workers`.
OracleSamples reflected_bm_oracle(double t, Side side, std::int64_t trials, std::uint64_t seed,
                                  double dt, int workers = 1);

/// i-th standard normal of a counter-based stream (Box-Muller).
double counter_normal(std::uint64_t key, std::uint64_t counter);

}  // namespace fppweb
