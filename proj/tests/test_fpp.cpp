#include "doctest.h"

#include "fppweb/error.hpp"
#include "fppweb/fpp.hpp"
#include "oracles.hpp"

using namespace fppweb;

TEST_CASE("jump set invariants") {
  CHECK_THROWS(JumpSet("no-left", {{1, 0}, {0, 1}}));
  CHECK_THROWS(JumpSet("back", {{1, 0}, {-1, 0}, {0, -1}}));
  const auto f5 = presets::fig5();
  CHECK(f5.offsets().size() == 5);
  CHECK(f5.contains(-1, 1));
  CHECK_FALSE(presets::cross().contains(1, 1));
  CHECK(f5.max_same_slice_dx() == 1);
}

TEST_CASE("edge weights") {
  const IncrementField f(4, presets::pm12());
  const auto jumps = presets::fig5();
  for (std::int64_t x = -5; x <= 5; ++x) {
    const LatticePoint u{x, 2};
    const LatticePoint succ{x + sample_increment(f, x, 2), 3};
    CHECK(edge_weight(f, jumps, u, succ) == 0);
    CHECK(edge_weight(f, jumps, u, u) == 0);
    for (const auto& o : jumps.offsets()) {
      const LatticePoint v{x + o.dx, 2 + o.dt};
      CHECK(edge_weight(f, jumps, u, v) == (v == succ || v == u ? 0 : 1));
    }
    CHECK_FALSE(edge_weight(f, jumps, u, {x, 1}).has_value());
    CHECK_FALSE(edge_weight(f, jumps, u, {x + 7, 3}).has_value());
  }
}

TEST_CASE("propagate matches the explicit-graph oracle") {
  const Window w(-20, 20, 0, 39);
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    for (const auto& spec : {presets::lazy(), presets::pm12()})
      for (const auto& jumps : {presets::fig5(), presets::cross()}) {
        const IncrementField f(seed, spec);
        const LatticePoint src{static_cast<std::int64_t>(mix64(seed) % 21) - 10,
                               static_cast<std::int64_t>(mix64(seed + 1) % 10)};
        const auto fr = propagate(f, jumps, src, w.t_max, w, {DistanceFrontier::kMaxDist, false});
        const auto ref = oracle::dijkstra(f, jumps, src, w);
        for (std::int64_t t = w.t_min; t <= w.t_max; ++t)
          for (std::int64_t x = w.x_min; x <= w.x_max; ++x) {
            const int d = ref[static_cast<std::size_t>((t - w.t_min) * w.width() + (x - w.x_min))];
            const auto got = fr.at(x, t);
            if (t < src.t) continue;
            CHECK(got.value_or(-1) == d);
            ++compared;
          }
      }
  CHECK(compared > 100000);
}

TEST_CASE("truncation at max_dist") {
  const Window w(-20, 20, 0, 39);
  const IncrementField f(8, presets::lazy());
  const auto full = propagate(f, presets::fig5(), {0, 0}, 39, w, {DistanceFrontier::kMaxDist, false});
  const auto cut = propagate(f, presets::fig5(), {0, 0}, 39, w, {2, false});
  for (std::int64_t t = 0; t <= 39; ++t)
    for (std::int64_t x = -20; x <= 20; ++x) {
      const auto d = full.at(x, t);
      CHECK(cut.at(x, t) == (d && *d <= 2 ? d : std::nullopt));
    }
}

TEST_CASE("zero-cost walk and reversed time") {
  const Window w(-40, 40, -5, 40);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const IncrementField f(seed, presets::simple());
    const auto fig5 = presets::fig5();
    const auto walk = walk_lattice(f, 0, 0, 6);
    CHECK(distance(f, fig5, {0, 0}, {walk.at(6), 6}, w) == 0);
    CHECK_FALSE(distance(f, fig5, {walk.at(6), 6}, {0, 0}, w).has_value());
    CHECK(distance(f, fig5, {3, 4}, {3, 4}, w) == 0);
    const auto fr = propagate(f, fig5, {0, 0}, 6, w);
    CHECK(fr.at(0, 0) == 0);
    for (std::int64_t t = 0; t <= 6; ++t) CHECK(fr.at(walk.at(t), t) == 0);
  }
}

TEST_CASE("triangle inequality on time-ordered triples") {
  const Window w(-200, 200, 0, 30);
  const IncrementField f(77, presets::pm12());
  const auto jumps = presets::cross();
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto r = [&](std::uint64_t salt, std::int64_t mod) {
      return static_cast<std::int64_t>(mix64(k * 31 + salt) % static_cast<std::uint64_t>(mod));
    };
    const std::int64_t t1 = r(1, 10), t2 = t1 + r(2, 8), t3 = t2 + r(3, 8);
    const LatticePoint u{r(4, 11) - 5, t1}, v{r(5, 11) - 5, t2}, x{r(6, 11) - 5, t3};
    const auto uv = distance(f, jumps, u, v, w, 20);
    const auto vx = distance(f, jumps, v, x, w, 20);
    const auto ux = distance(f, jumps, u, x, w, 20);
    if (uv && vx) {
      REQUIRE(ux.has_value());
      CHECK(*ux <= *uv + *vx);
    }
  }
}

TEST_CASE("boundary curves") {
  const Window w(-40, 40, 0, 30);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const IncrementField f(seed, presets::lazy());
    const auto jumps = presets::fig5();
    const auto right = boundary_lattice(f, jumps, {0, 0}, Side::right, 30, w);
    const auto left = boundary_lattice(f, jumps, {0, 0}, Side::left, 30, w);
    const auto walk = walk_lattice(f, 0, 0, 30);
    CHECK(right.at(0) >= jumps.max_same_slice_dx());
    CHECK(left.at(0) <= jumps.min_same_slice_dx());
    const auto ref = oracle::dijkstra(f, jumps, {0, 0}, w);
    for (std::int64_t t = 0; t <= 30; ++t) {
      CHECK(right.at(t) >= walk.at(t));
      CHECK(left.at(t) <= walk.at(t));
      std::int64_t hi = w.x_min - 1, lo = w.x_max + 1;
      for (std::int64_t x = w.x_min; x <= w.x_max; ++x) {
        const int d = ref[static_cast<std::size_t>(t * w.width() + (x - w.x_min))];
        if (d >= 0 && d <= 1) {
          hi = std::max(hi, x);
          lo = std::min(lo, x);
        }
      }
      CHECK(right.at(t) == hi);
      CHECK(left.at(t) == lo);
    }
    const auto curve = boundary_curve(f, jumps, {0, 0}, Side::right, 30, w);
    CHECK(curve.values.back() == static_cast<double>(right.at(30)));
  }
}

TEST_CASE("margin violations are reported with advice") {
  const IncrementField f(1, presets::pm12());
  const Window tight(-4, 4, 0, 30);
  try {
    propagate(f, presets::fig5(), {0, 0}, 30, tight);
    FAIL("expected a margin violation");
  } catch (const MarginViolation& e) {
    CHECK(e.suggested_growth() > 0);
    CHECK(std::string(e.what()).find("enlarge") != std::string::npos);
  }
}

TEST_CASE("rescaled distances") {
  const Window w(-80, 80, 0, 80);
  const IncrementField f(5, presets::lazy());
  const auto jumps = presets::fig5();
  // Off-lattice target: 1/3 is not on (1/2)Z.
  CHECK_FALSE(rescaled_distance(f, jumps, 4, {Rational(0), Rational(0)}, {Rational(1, 3), Rational(1)}, w).has_value());
  const RationalPoint u{Rational(1, 2), Rational(1, 4)}, v{Rational(-1), Rational(3)};
  CHECK(rescaled_distance(f, jumps, 4, u, v, w) == distance(f, jumps, {1, 1}, {-2, 12}, w));
  CHECK(rescaled_distance(f, jumps, 1, {Rational(2), Rational(1)}, {Rational(0), Rational(9)}, w) ==
        distance(f, jumps, {2, 1}, {0, 9}, w));
  CHECK(unscale({Rational(0), Rational(1, 3)}, 4) == std::nullopt);
  CHECK(unscale({Rational(3, 2), Rational(5, 4)}, 4) == LatticePoint{3, 5});
}
