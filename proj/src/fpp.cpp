#include "fppweb/fpp.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "fppweb/error.hpp"
#include "fppweb/simd.hpp"

namespace fppweb {

MarginViolation::MarginViolation(std::int64_t position, std::int64_t time, std::int64_t x_min,
                                 std::int64_t x_max, std::int64_t margin)
    : std::runtime_error("margin violation: reachable position " + std::to_string(position) +
                         " at t=" + std::to_string(time) + " is within " +
                         std::to_string(margin) + " of the window edge [" +
                         std::to_string(x_min) + ", " + std::to_string(x_max) +
                         "]; enlarge the window by at least " + std::to_string(margin * 4) +
                         " on each side"),
      position_(position),
      time_(time),
      margin_(margin) {}

JumpSet::JumpSet(std::string name, std::vector<Offset> offsets)
    : name_(std::move(name)), offsets_(std::move(offsets)) {
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
  bool pos = false;
  bool neg = false;
  for (const auto& o : offsets_) {
    if (o.dt < 0) throw std::invalid_argument("jump set '" + name_ + "': negative dt offset");
    if (o.dt == 0 && o.dx > 0) pos = true;
    if (o.dt == 0 && o.dx < 0) neg = true;
  }
  if (!pos || !neg)
    throw std::invalid_argument("jump set '" + name_ +
                                "': needs same-slice offsets (x,0) with x>0 and x<0");
}

bool JumpSet::contains(std::int64_t dx, std::int64_t dt) const {
  return std::binary_search(offsets_.begin(), offsets_.end(), Offset{dx, dt});
}

std::int64_t JumpSet::max_abs_dx() const {
  std::int64_t m = 0;
  for (const auto& o : offsets_) m = std::max(m, o.dx < 0 ? -o.dx : o.dx);
  return m;
}

std::int64_t JumpSet::max_dt() const {
  std::int64_t m = 0;
  for (const auto& o : offsets_) m = std::max(m, o.dt);
  return m;
}

std::int64_t JumpSet::max_same_slice_dx() const {
  std::int64_t m = 0;
  for (const auto& o : offsets_)
    if (o.dt == 0) m = std::max(m, o.dx);
  return m;
}

std::int64_t JumpSet::min_same_slice_dx() const {
  std::int64_t m = 0;
  for (const auto& o : offsets_)
    if (o.dt == 0) m = std::min(m, o.dx);
  return m;
}

namespace presets {

JumpSet fig5() { return JumpSet("fig5", {{-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}); }

JumpSet cross() { return JumpSet("cross", {{-1, 0}, {1, 0}, {0, 1}}); }

std::optional<JumpSet> jumps_by_name(const std::string& name) {
  if (name == "fig5") return fig5();
  if (name == "cross") return cross();
  return std::nullopt;
}

}  // namespace presets

std::optional<int> edge_weight(const IncrementField& field, const JumpSet& jumps, LatticePoint u,
                               LatticePoint v) {
  if (v == u) return 0;
  if (v.t == u.t + 1 && v.x == u.x + sample_increment(field, u.x, u.t)) return 0;
  if (jumps.contains(v.x - u.x, v.t - u.t)) return 1;
  return std::nullopt;
}

DistanceFrontier::DistanceFrontier(LatticePoint source, std::int64_t horizon, Window window,
                                   int max_dist)
    : source_(source), horizon_(horizon), window_(window), max_dist_(max_dist) {
  const auto rows = static_cast<std::size_t>(horizon - source.t + 1);
  cells_.assign(rows * static_cast<std::size_t>(window.width()), simd::kUnreached);
  spans_.assign(rows, {1, 0});
}

std::pair<std::int64_t, std::int64_t> DistanceFrontier::span(std::int64_t t) const {
  if (t < source_.t || t > horizon_) return {1, 0};
  return spans_[static_cast<std::size_t>(t - source_.t)];
}

void DistanceFrontier::set_span(std::int64_t t, std::int64_t lo, std::int64_t hi) {
  spans_[static_cast<std::size_t>(t - source_.t)] = {lo, hi};
}

std::uint8_t* DistanceFrontier::row(std::int64_t t) {
  return cells_.data() + static_cast<std::size_t>(t - source_.t) * window_.width();
}

const std::uint8_t* DistanceFrontier::row(std::int64_t t) const {
  return cells_.data() + static_cast<std::size_t>(t - source_.t) * window_.width();
}

std::optional<int> DistanceFrontier::at(std::int64_t x, std::int64_t t) const {
  if (t < source_.t || t > horizon_ || x < window_.x_min || x > window_.x_max) return std::nullopt;
  const std::uint8_t d = row(t)[x - window_.x_min];
  if (d > max_dist_) return std::nullopt;
  return d;
}

std::vector<std::pair<std::int64_t, int>> DistanceFrontier::slice(std::int64_t t) const {
  std::vector<std::pair<std::int64_t, int>> out;
  if (t < source_.t || t > horizon_) return out;
  const std::uint8_t* r = row(t);
  const auto [lo, hi] = span(t);
  for (std::int64_t k = lo; k <= hi; ++k)
    if (r[k] <= max_dist_) out.emplace_back(window_.x_min + k, r[k]);
  return out;
}

std::optional<std::int64_t> DistanceFrontier::extreme(std::int64_t t, Side side,
                                                      int within) const {
  if (t < source_.t || t > horizon_) return std::nullopt;
  const std::uint8_t* r = row(t);
  const auto [lo, hi] = span(t);
  if (side == Side::right) {
    for (std::int64_t k = hi; k >= lo; --k)
      if (r[k] <= within) return window_.x_min + k;
  } else {
    for (std::int64_t k = lo; k <= hi; ++k)
      if (r[k] <= within) return window_.x_min + k;
  }
  return std::nullopt;
}

std::int64_t margin_width(const IncrementField& field, const JumpSet& jumps) {
  return std::max<std::int64_t>({jumps.max_abs_dx(), field.spec().max_abs_step(), 1});
}

namespace {

struct Span {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
  bool empty() const { return lo > hi; }
  void cover(std::int64_t a, std::int64_t b) {
    if (empty()) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
};

// dst[k + shift] op= src[k] for k in [lo, hi], clipped to [0, width).
template <typename Apply>
void shifted(std::int64_t lo, std::int64_t hi, std::int64_t shift, std::int64_t width,
             Apply&& apply) {
  const std::int64_t a = std::max(lo, -shift);
  const std::int64_t b = std::min(hi, width - 1 - shift);
  if (a > b) return;
  apply(a, a + shift, static_cast<std::size_t>(b - a + 1));
}

Span finite_span(const std::uint8_t* r, Span s, int max_dist) {
  while (!s.empty() && r[s.lo] > max_dist) ++s.lo;
  while (!s.empty() && r[s.hi] > max_dist) --s.hi;
  return s;
}

}  // namespace

DistanceFrontier propagate(const IncrementField& field, const JumpSet& jumps, LatticePoint source,
                           std::int64_t horizon, const Window& window,
                           const PropagateOptions& opts) {
  if (!window.contains(source.x, source.t))
    throw std::invalid_argument("propagate: source outside the window");
  if (horizon > window.t_max) throw std::invalid_argument("propagate: horizon beyond window");
  if (horizon < source.t) throw std::invalid_argument("propagate: horizon before source");
  if (opts.max_dist < 0 || opts.max_dist > DistanceFrontier::kMaxDist)
    throw std::invalid_argument("propagate: max_dist out of range");

  const auto& kern = simd::kernels();
  const auto& spec = field.spec();
  const auto max_dist = static_cast<std::uint8_t>(opts.max_dist);
  const std::int64_t width = window.width();
  const auto rows = static_cast<std::size_t>(horizon - source.t + 1);

  DistanceFrontier frontier(source, horizon, window, opts.max_dist);
  std::vector<Span> spans(rows);

  std::vector<Offset> same_slice;
  std::vector<Offset> forward;
  for (const auto& o : jumps.offsets()) {
    if (o.dt == 0 && o.dx != 0) same_slice.push_back(o);
    if (o.dt > 0) forward.push_back(o);
  }
  const std::int64_t reach_right = std::max<std::int64_t>(0, jumps.max_same_slice_dx());
  const std::int64_t reach_left = std::min<std::int64_t>(0, jumps.min_same_slice_dx());

  const std::int64_t src_k = source.x - window.x_min;
  frontier.row(source.t)[src_k] = 0;
  spans[0].cover(src_k, src_k);

  std::vector<std::uint8_t> snapshot(static_cast<std::size_t>(width));
  std::vector<std::uint8_t> choice(static_cast<std::size_t>(width));

  for (std::int64_t t = source.t; t <= horizon; ++t) {
    const auto ri = static_cast<std::size_t>(t - source.t);
    std::uint8_t* row = frontier.row(t);
    Span span = spans[ri];
    if (span.empty()) continue;
    kern.clamp(row + span.lo, static_cast<std::size_t>(span.hi - span.lo + 1), max_dist);
    span = finite_span(row, span, opts.max_dist);
    if (span.empty()) {
      spans[ri] = span;
      frontier.set_span(t, span.lo, span.hi);
      continue;
    }

    // Same-slice jump chains: each pass extends chains by one jump.
    for (int pass = 0; pass < opts.max_dist && !same_slice.empty(); ++pass) {
      const Span before = span;
      const auto count = static_cast<std::size_t>(before.hi - before.lo + 1);
      std::memcpy(snapshot.data() + before.lo, row + before.lo, count);
      for (const auto& o : same_slice) {
        shifted(before.lo, before.hi, o.dx, width,
                [&](std::int64_t from, std::int64_t to, std::size_t n) {
                  kern.relax(row + to, snapshot.data() + from, n, 1);
                });
      }
      span.lo = std::max<std::int64_t>(0, before.lo + reach_left);
      span.hi = std::min<std::int64_t>(width - 1, before.hi + reach_right);
      kern.clamp(row + span.lo, static_cast<std::size_t>(span.hi - span.lo + 1), max_dist);
      span = finite_span(row, span, opts.max_dist);
      if (span.lo == before.lo && span.hi == before.hi &&
          std::memcmp(snapshot.data() + before.lo, row + before.lo, count) == 0)
        break;
    }
    spans[ri] = span;
    frontier.set_span(t, span.lo, span.hi);
    if (t == horizon) break;

    const auto count = static_cast<std::size_t>(span.hi - span.lo + 1);
    kern.sample_indices(field.row_key(t), window.x_min + span.lo, spec.thresholds().data(),
                        spec.thresholds().size(), count, choice.data() + span.lo);

    // Walk successors at cost 0.
    std::uint8_t* next = frontier.row(t + 1);
    for (std::size_t idx = 0; idx < spec.size(); ++idx) {
      const std::int64_t v = spec.value(idx);
      shifted(span.lo, span.hi, v, width, [&](std::int64_t from, std::int64_t to, std::size_t n) {
        kern.masked_min(next + to, row + from, choice.data() + from,
                        static_cast<std::uint8_t>(idx), n);
        spans[ri + 1].cover(to, to + static_cast<std::int64_t>(n) - 1);
      });
    }
    // Jumps into later slices at cost 1.
    for (const auto& o : forward) {
      if (t + o.dt > horizon) continue;
      std::uint8_t* target = frontier.row(t + o.dt);
      const auto ti = ri + static_cast<std::size_t>(o.dt);
      shifted(span.lo, span.hi, o.dx, width, [&](std::int64_t from, std::int64_t to, std::size_t n) {
        kern.relax(target + to, row + from, n, 1);
        spans[ti].cover(to, to + static_cast<std::int64_t>(n) - 1);
      });
    }
  }

  if (opts.check_margin) {
    const std::int64_t margin = margin_width(field, jumps);
    for (std::int64_t t = source.t; t <= horizon; ++t) {
      const Span s = spans[static_cast<std::size_t>(t - source.t)];
      if (s.empty()) continue;
      const std::uint8_t* r = frontier.row(t);
      for (std::int64_t k = s.lo; k <= s.hi && k < margin; ++k)
        if (r[k] <= max_dist)
          throw MarginViolation(window.x_min + k, t, window.x_min, window.x_max, margin);
      for (std::int64_t k = std::max(s.lo, width - margin); k <= s.hi; ++k)
        if (r[k] <= max_dist)
          throw MarginViolation(window.x_min + k, t, window.x_min, window.x_max, margin);
    }
  }
  return frontier;
}

std::optional<int> distance(const IncrementField& field, const JumpSet& jumps, LatticePoint u,
                            LatticePoint v, const Window& window, int max_dist) {
  if (!window.contains(u.x, u.t) || !window.contains(v.x, v.t))
    throw std::invalid_argument("distance: points must lie inside the window");
  if (v == u) return 0;
  if (v.t < u.t) return std::nullopt;
  const auto frontier = propagate(field, jumps, u, v.t, window, {max_dist, true});
  return frontier.at(v.x, v.t);
}

LatticePath boundary_lattice(const IncrementField& field, const JumpSet& jumps,
                             LatticePoint source, Side side, std::int64_t horizon,
                             const Window& window) {
  const auto frontier = propagate(field, jumps, source, horizon, window, {1, true});
  LatticePath lp{source.t, {}};
  lp.pos.reserve(static_cast<std::size_t>(horizon - source.t + 1));
  for (std::int64_t t = source.t; t <= horizon; ++t) {
    const auto e = frontier.extreme(t, side, 1);
    // The walk from the source always has distance 0 inside the window.
    if (!e) throw std::logic_error("boundary: empty distance-1 slice");
    lp.pos.push_back(*e);
  }
  return lp;
}

Path boundary_curve(const IncrementField& field, const JumpSet& jumps, LatticePoint source,
                    Side side, std::int64_t horizon, const Window& window) {
  return to_path(boundary_lattice(field, jumps, source, side, horizon, window), 1);
}

std::optional<LatticePoint> unscale(const RationalPoint& p, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const Rational tn = p.t * Rational(n);
  if (tn.den() != 1) return std::nullopt;
  if (is_perfect_square(n)) {
    const Rational xs = p.x * Rational(isqrt(n));
    if (xs.den() != 1) return std::nullopt;
    return LatticePoint{xs.num(), tn.num()};
  }
  // sqrt(n) irrational: only x = 0 lands on the lattice.
  if (p.x != Rational(0)) return std::nullopt;
  return LatticePoint{0, tn.num()};
}

std::optional<int> rescaled_distance(const IncrementField& field, const JumpSet& jumps,
                                     std::int64_t n, const RationalPoint& u,
                                     const RationalPoint& v, const Window& window, int max_dist) {
  const auto lu = unscale(u, n);
  const auto lv = unscale(v, n);
  if (!lu || !lv) return std::nullopt;
  return distance(field, jumps, *lu, *lv, window, max_dist);
}

}  // namespace fppweb
