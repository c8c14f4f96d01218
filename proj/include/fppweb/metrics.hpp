#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "fppweb/path.hpp"

namespace fppweb {

/// tanh(x) / (1 + |t|); zero at t = ±inf; tanh(±inf) = ±1.
double phi(double x, double t);

/// Evaluation times for the sup in the path metric. May contain ±inf.
struct EvalGrid {
  std::vector<double> times;
};

/// Breakpoints of both paths, `subdivisions` interior points per segment,
/// the point nearest 0 of each constant tail, and +inf.
EvalGrid make_eval_grid(const Path& a, const Path& b, int subdivisions = 8);

/// sup_t |Phi(a^(t), t) - Phi(b^(t), t)| ∨ |tanh(t_a) - tanh(t_b)| over the grid.
double path_distance(const Path& a, const Path& b, const EvalGrid& grid);
double path_distance(const Path& a, const Path& b);

/// Hausdorff distance between finite path sets. With no grid, each pair uses
/// its own make_eval_grid.
double hausdorff(std::span<const Path> a, std::span<const Path> b,
                 const std::optional<EvalGrid>& grid = std::nullopt);

/// sup of |f^(w) - f^(s)| over |w|, |s| <= M, |w - s| <= delta. Exact for
/// piecewise-linear paths.
double modulus(const Path& f, double delta, double M);

enum class VariationSign { positive, negative };

/// Positive (negative) variation of f^ over [w, s]; exact for piecewise-linear f.
double variation(const Path& f, double w, double s, VariationSign sign);

using Point2 = std::array<double, 2>;
using Point5 = std::array<double, 5>;

/// E((u, v), value) in R^4 x [-1, 1]; value may be ±inf.
Point5 epigraph_embed(const Point2& u, const Point2& v, double value);

struct DistanceEntry {
  Point2 u;
  Point2 v;
  std::optional<int> value;  // nullopt = inf
};

/// Finite sampled distance function over distinct (u, v) keys.
struct DistanceSample {
  std::vector<DistanceEntry> points;
  /// Throws std::invalid_argument on duplicate keys.
  void validate() const;
};

/// d_* proxy: Hausdorff distance between embedded epigraph samples, each key
/// contributing integer levels value..cap plus the inf level. Throws
/// KeyMismatch when the key grids differ.
double epigraph_distance(const DistanceSample& a, const DistanceSample& b, int cap = 8);

}  // namespace fppweb
