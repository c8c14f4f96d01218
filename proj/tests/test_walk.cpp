#include "doctest.h"

#include <cmath>
#include <vector>

#include "fppweb/stats.hpp"
#include "fppweb/walk.hpp"

using namespace fppweb;

TEST_CASE("walk positions follow the increment recursion") {
  const IncrementField f(3, presets::pm12());
  CHECK(walk_position(f, 5, 0, 0) == 5);
  for (std::int64_t i = -5; i <= 5; ++i)
    CHECK(walk_position(f, i, 2, 3) - i == sample_increment(f, i, 2));
  const auto lp = walk_lattice(f, 4, -3, 10);
  for (std::int64_t t = -3; t <= 10; ++t) CHECK(lp.at(t) == walk_position(f, 4, -3, t));
}

TEST_CASE("walk paths interpolate between integer times") {
  const IncrementField f(9, presets::lazy());
  const auto p = walk_path(f, 2, 1, 1);
  CHECK(p.size() == 1);
  CHECK(p(1.0) == 2.0);
  const auto q = walk_path(f, 0, 0, 5);
  CHECK(q(0.5) == doctest::Approx((q.values[0] + q.values[1]) / 2));
  for (int t = 0; t <= 5; ++t) CHECK(q(t) == static_cast<double>(walk_position(f, 0, 0, t)));
}

TEST_CASE("rescaled walks") {
  const IncrementField f(1, presets::simple());
  const auto a = rescaled_walk(f, 1, Rational(2), Rational(1), Rational(6));
  const auto b = walk_path(f, 2, 1, 6);
  CHECK(a.values == b.values);
  CHECK(a.start_time == b.start_time);

  const auto r = rescaled_walk(f, 4, Rational(1, 3), Rational(0), Rational(1));
  CHECK(r.dt == 0.25);
  CHECK(r.size() == 5);
  CHECK(r.values[0] == 1.0 / 2.0);  // ceil(2 / 3) / 2
  for (const double v : r.values) CHECK(std::fmod(v * 2, 1.0) == 0.0);
}

TEST_CASE("walks coalesce once they meet") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const IncrementField f(seed, seed % 2 ? presets::pm12() : presets::lazy());
    const auto i1 = static_cast<std::int64_t>(mix64(seed) % 60) - 30;
    const auto i2 = static_cast<std::int64_t>(mix64(seed + 7) % 60) - 30;
    const auto a = walk_lattice(f, i1, 0, 60);
    const auto b = walk_lattice(f, i2, 0, 60);
    bool met = false;
    for (std::int64_t t = 0; t <= 60; ++t) {
      if (met) CHECK(a.at(t) == b.at(t));
      met = met || a.at(t) == b.at(t);
    }
  }
}

TEST_CASE("non-simple walks cross without meeting") {
  int crossings = 0;
  for (std::uint64_t seed = 0; seed < 100 && crossings == 0; ++seed) {
    const IncrementField f(seed, presets::pm12());
    std::vector<LatticePath> walks;
    for (std::int64_t i = -10; i <= 10; ++i) walks.push_back(walk_lattice(f, i, 0, 40));
    for (std::size_t p = 0; p < walks.size(); ++p)
      for (std::size_t q = p + 1; q < walks.size(); ++q)
        for (std::int64_t t = 0; t < 40; ++t) {
          const auto d0 = walks[p].at(t) - walks[q].at(t);
          const auto d1 = walks[p].at(t + 1) - walks[q].at(t + 1);
          if (d0 != 0 && d1 != 0 && (d0 > 0) != (d1 > 0)) ++crossings;
        }
  }
  CHECK(crossings > 0);
}

TEST_CASE("Donsker marginal at n = 400") {
  for (const auto& spec : {presets::simple(), presets::pm12()}) {
    std::vector<double> xs;
    const double scale = spec.sigma();
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      const IncrementField f(seed, spec);
      xs.push_back(rescaled_walk_lattice(f, 400, Rational(0), Rational(0), Rational(1)).pos.back() /
                   (20.0 * scale));
    }
    CHECK(ks_one_sample(xs, standard_normal_cdf) <= 0.05);
  }
}
