#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fppweb {

enum class Side { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

/// Piecewise-linear trajectory on the uniform grid start_time + m * dt.
/// Evaluation is the hat-extension: constant values[0] before the start,
/// constant values.back() after the last grid point.
struct Path {
  double start_time = 0.0;
  double dt = 1.0;
  std::vector<double> values;

  Path() = default;
  Path(double start, double spacing, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double end_time() const { return time_at(values.size() - 1); }
  double time_at(std::size_t m) const { return start_time + static_cast<double>(m) * dt; }
  double operator()(double t) const;
};

/// Integer trajectory on the unit lattice time grid, starting at lattice
/// time t0. The exact carrier behind every rescaled path.
struct LatticePath {
  std::int64_t t0 = 0;
  std::vector<std::int64_t> pos;

  std::int64_t t_end() const { return t0 + static_cast<std::int64_t>(pos.size()) - 1; }
  std::int64_t at(std::int64_t t) const { return pos[static_cast<std::size_t>(t - t0)]; }
  bool covers(std::int64_t t) const { return t >= t0 && t <= t_end(); }
};

/// Rescale a lattice path: time / n, space / sqrt(n).
Path to_path(const LatticePath& lp, std::int64_t n);

}  // namespace fppweb
