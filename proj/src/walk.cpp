#include "fppweb/walk.hpp"

#include <stdexcept>

namespace fppweb {

Window::Window(std::int64_t x_lo, std::int64_t x_hi, std::int64_t t_lo, std::int64_t t_hi)
    : x_min(x_lo), x_max(x_hi), t_min(t_lo), t_max(t_hi) {
  if (!(x_min < x_max)) throw std::invalid_argument("window needs x_min < x_max");
  if (!(t_min < t_max)) throw std::invalid_argument("window needs t_min < t_max");
}

std::int64_t walk_position(const IncrementField& field, std::int64_t i, std::int64_t j,
                           std::int64_t t) {
  if (t < j) throw std::invalid_argument("walk_position: t before the start time");
  std::int64_t x = i;
  for (std::int64_t s = j; s < t; ++s) x += sample_increment(field, x, s);
  return x;
}

LatticePath walk_lattice(const IncrementField& field, std::int64_t i, std::int64_t j,
                         std::int64_t t_end) {
  if (t_end < j) throw std::invalid_argument("walk: t_end before the start time");
  LatticePath lp{j, {}};
  lp.pos.reserve(static_cast<std::size_t>(t_end - j + 1));
  std::int64_t x = i;
  lp.pos.push_back(x);
  for (std::int64_t s = j; s < t_end; ++s) {
    x += sample_increment(field, x, s);
    lp.pos.push_back(x);
  }
  return lp;
}

Path walk_path(const IncrementField& field, std::int64_t i, std::int64_t j, std::int64_t t_end) {
  return to_path(walk_lattice(field, i, j, t_end), 1);
}

LatticePath rescaled_walk_lattice(const IncrementField& field, std::int64_t n, const Rational& x,
                                  const Rational& s, const Rational& t_end) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (t_end < s) throw std::invalid_argument("rescaled_walk: t_end before s");
  return walk_lattice(field, ceil_space_index(x, n), ceil_time_index(s, n),
                      ceil_time_index(t_end, n));
}

Path rescaled_walk(const IncrementField& field, std::int64_t n, const Rational& x,
                   const Rational& s, const Rational& t_end) {
  return to_path(rescaled_walk_lattice(field, n, x, s, t_end), n);
}

}  // namespace fppweb
