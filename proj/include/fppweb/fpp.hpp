#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fppweb/increment.hpp"
#include "fppweb/path.hpp"
#include "fppweb/rational.hpp"
#include "fppweb/walk.hpp"

namespace fppweb {

struct LatticePoint {
  std::int64_t x;
  std::int64_t t;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct Offset {
  std::int64_t dx;
  std::int64_t dt;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// Offsets reachable at cost one. Requires a positive and a negative
/// same-slice offset and dt >= 0 throughout; stored sorted and deduplicated.
class JumpSet {
 public:
  JumpSet(std::string name, std::vector<Offset> offsets);

  const std::string& name() const { return name_; }
  const std::vector<Offset>& offsets() const { return offsets_; }
  bool contains(std::int64_t dx, std::int64_t dt) const;
  std::int64_t max_abs_dx() const;
  std::int64_t max_dt() const;
  std::int64_t max_same_slice_dx() const;
  std::int64_t min_same_slice_dx() const;

 private:
  std::string name_;
  std::vector<Offset> offsets_;
};

namespace presets {
/// {(-1,0), (1,0), (-1,1), (0,1), (1,1)}.
JumpSet fig5();
/// {(-1,0), (1,0), (0,1)}.
JumpSet cross();
std::optional<JumpSet> jumps_by_name(const std::string& name);
}  // namespace presets

/// w_{u,v} = p ∧ s: 0 for v = u or the walk successor of u, 1 for v - u in the
/// jump set, nullopt (infinite) otherwise.
std::optional<int> edge_weight(const IncrementField& field, const JumpSet& jumps,
                               LatticePoint u, LatticePoint v);

struct PropagateOptions {
  int max_dist = 3;
  bool check_margin = true;
};

/// Time-sliced distances from one source, truncated at max_dist. Rows are
/// dense over the window width; slice() gives the sparse view.
class DistanceFrontier {
 public:
  static constexpr int kMaxDist = 253;

  DistanceFrontier(LatticePoint source, std::int64_t horizon, Window window, int max_dist);

  LatticePoint source() const { return source_; }
  std::int64_t horizon() const { return horizon_; }
  const Window& window() const { return window_; }
  int max_dist() const { return max_dist_; }

  std::optional<int> at(std::int64_t x, std::int64_t t) const;
  /// (position, distance) pairs in increasing position order.
  std::vector<std::pair<std::int64_t, int>> slice(std::int64_t t) const;
  /// Extreme position with distance <= within on slice t, if any.
  std::optional<std::int64_t> extreme(std::int64_t t, Side side, int within) const;

  std::uint8_t* row(std::int64_t t);
  const std::uint8_t* row(std::int64_t t) const;

  /// Index range [lo, hi] (relative to x_min) outside which row t holds no
  /// recorded distance; lo > hi when the slice is empty.
  std::pair<std::int64_t, std::int64_t> span(std::int64_t t) const;
  void set_span(std::int64_t t, std::int64_t lo, std::int64_t hi);

 private:
  LatticePoint source_;
  std::int64_t horizon_;
  Window window_;
  int max_dist_;
  std::vector<std::uint8_t> cells_;
  std::vector<std::pair<std::int64_t, std::int64_t>> spans_;
};

/// Exact window-restricted D_RW from `source` to every (p, t) with t <= horizon,
/// truncated at opts.max_dist. Throws MarginViolation (when opts.check_margin)
/// if a recorded position lies within the step margin of the spatial edge.
DistanceFrontier propagate(const IncrementField& field, const JumpSet& jumps,
                           LatticePoint source, std::int64_t horizon, const Window& window,
                           const PropagateOptions& opts = {});

/// Width of the edge band checked for MarginViolation.
std::int64_t margin_width(const IncrementField& field, const JumpSet& jumps);

/// D_RW(u, v); nullopt means infinite (v earlier than u, unreachable, or above
/// max_dist).
std::optional<int> distance(const IncrementField& field, const JumpSet& jumps, LatticePoint u,
                            LatticePoint v, const Window& window, int max_dist = 3);

/// Extreme distance-<=1 position per slice from `source` through `horizon`.
LatticePath boundary_lattice(const IncrementField& field, const JumpSet& jumps,
                             LatticePoint source, Side side, std::int64_t horizon,
                             const Window& window);
Path boundary_curve(const IncrementField& field, const JumpSet& jumps, LatticePoint source,
                    Side side, std::int64_t horizon, const Window& window);

struct RationalPoint {
  Rational x;
  Rational t;
};

/// Lattice site behind a rescaled point, if it lies on (1/sqrt n)Z x (1/n)Z.
std::optional<LatticePoint> unscale(const RationalPoint& p, std::int64_t n);

/// D^n_RW(u, v) = D^1_RW at the unscaled points; nullopt when off-lattice.
std::optional<int> rescaled_distance(const IncrementField& field, const JumpSet& jumps,
                                     std::int64_t n, const RationalPoint& u,
                                     const RationalPoint& v, const Window& window,
                                     int max_dist = 3);

}  // namespace fppweb
