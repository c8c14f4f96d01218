#pragma once

#include <cstdint>

#include "fppweb/increment.hpp"
#include "fppweb/path.hpp"
#include "fppweb/rational.hpp"

namespace fppweb {

/// Finite lattice box [x_min, x_max] x [t_min, t_max] enumerated by the
/// frontier engine. Walks themselves are defined on all of Z^2.
struct Window {
  std::int64_t x_min;
  std::int64_t x_max;
  std::int64_t t_min;
  std::int64_t t_max;

  Window(std::int64_t x_lo, std::int64_t x_hi, std::int64_t t_lo, std::int64_t t_hi);

  std::int64_t width() const { return x_max - x_min + 1; }
  bool contains(std::int64_t x, std::int64_t t) const {
    return x >= x_min && x <= x_max && t >= t_min && t <= t_max;
  }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Y_{i,j}(t) for integer t >= j.
std::int64_t walk_position(const IncrementField& field, std::int64_t i, std::int64_t j,
                           std::int64_t t);

/// Y_{i,j} on lattice times j..t_end.
LatticePath walk_lattice(const IncrementField& field, std::int64_t i, std::int64_t j,
                         std::int64_t t_end);

/// Y_{i,j} as a unit-spacing Path on [j, t_end].
Path walk_path(const IncrementField& field, std::int64_t i, std::int64_t j, std::int64_t t_end);

/// Lattice path behind Y^n started at (ceil(x)_{sqrt n}, ceil(s)_n) and run to
/// ceil(t_end)_n.
LatticePath rescaled_walk_lattice(const IncrementField& field, std::int64_t n, const Rational& x,
                                  const Rational& s, const Rational& t_end);

/// Y^n_{ceil(x)_{sqrt n}, ceil(s)_n} on [ceil(s)_n, ceil(t_end)_n], dt = 1/n.
Path rescaled_walk(const IncrementField& field, std::int64_t n, const Rational& x,
                   const Rational& s, const Rational& t_end);

}  // namespace fppweb
