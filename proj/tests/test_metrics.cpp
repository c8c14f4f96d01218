#include "doctest.h"

#include <cmath>
#include <limits>

#include "fppweb/error.hpp"
#include "fppweb/increment.hpp"
#include "fppweb/metrics.hpp"

using namespace fppweb;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Path random_path(std::uint64_t seed, std::size_t breakpoints) {
  std::vector<double> v;
  for (std::size_t m = 0; m < breakpoints; ++m)
    v.push_back(static_cast<double>(mix64(seed * 1000 + m) % 2001) / 1000.0 - 1.0);
  const double start = static_cast<double>(mix64(seed) % 200) / 100.0 - 1.5;
  const double dt = 0.05 + static_cast<double>(mix64(seed + 5) % 20) / 100.0;
  return Path(start, dt, v);
}

// Exhaustive oracle: dense uniform grid over [-M, M].
double dense_modulus(const Path& f, double delta, double M, int steps) {
  std::vector<double> vals;
  const double h = 2 * M / steps;
  for (int i = 0; i <= steps; ++i) vals.push_back(f(-M + i * h));
  double best = 0;
  const int span = static_cast<int>(std::floor(delta / h + 1e-12));
  for (int i = 0; i <= steps; ++i)
    for (int j = i; j <= std::min(steps, i + span); ++j) best = std::max(best, std::abs(vals[i] - vals[j]));
  return best;
}

}  // namespace

TEST_CASE("phi") {
  CHECK(phi(0, 0) == 0);
  CHECK(phi(kInf, 0) == 1);
  CHECK(phi(-kInf, 1) == -0.5);
  CHECK(phi(3, kInf) == 0);
}

TEST_CASE("path distance") {
  const Path a(0, 1, {0, 0});
  const Path b(1, 1, {0, 0});
  CHECK(path_distance(a, a) == 0);
  CHECK(path_distance(a, b) == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = random_path(s, 12), q = random_path(s + 500, 9), r = random_path(s + 900, 7);
    CHECK(path_distance(p, q) == path_distance(q, p));
    CHECK(path_distance(p, r) <= path_distance(p, q) + path_distance(q, r) + 1e-12);
  }
  // Explicitly prepending the hat extension leaves the sup term at zero; only
  // the start-time term separates the two.
  const Path p(0, 0.5, {1, 2, 0});
  const Path p_ext(-1, 0.5, {1, 1, 1, 2, 0});
  CHECK(path_distance(p, p_ext) == std::abs(std::tanh(0.0) - std::tanh(-1.0)));
}

TEST_CASE("hausdorff") {
  std::vector<Path> A, B;
  for (std::uint64_t s = 0; s < 4; ++s) {
    A.push_back(random_path(s, 6));
    B.push_back(random_path(s + 40, 6));
  }
  CHECK(hausdorff(A, A) == 0);
  CHECK(hausdorff(std::span(A).first(1), std::span(B).first(1)) == path_distance(A[0], B[0]));
  // Exhaustive: max over all of min over all, both directions.
  double ab = 0, ba = 0;
  for (const auto& a : A) {
    double m = kInf;
    for (const auto& b : B) m = std::min(m, path_distance(a, b));
    ab = std::max(ab, m);
  }
  for (const auto& b : B) {
    double m = kInf;
    for (const auto& a : A) m = std::min(m, path_distance(a, b));
    ba = std::max(ba, m);
  }
  CHECK(hausdorff(A, B) == std::max(ab, ba));
  CHECK_THROWS(hausdorff(std::span<const Path>(), B));
}

TEST_CASE("modulus") {
  CHECK(modulus(Path(0, 1, {2, 2, 2}), 0.3, 5) == 0);
  CHECK(modulus(Path(-1, 2, {-1, 1}), 0.5, 1) == doctest::Approx(0.5));
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto f = random_path(s, 20);
    const double delta = 0.1 + static_cast<double>(s % 7) * 0.13;
    const double M = 0.5 + static_cast<double>(s % 5) * 0.4;
    const double exact = modulus(f, delta, M);
    const double dense = dense_modulus(f, delta, M, 4000);
    CHECK(dense <= exact + 1e-12);
    // The dense grid resolves windows to within one step of slope * h.
    CHECK(exact - dense <= 2 * 40.0 * (2 * M / 4000));
    CHECK(modulus(f, delta * 1.5, M) >= exact);
    CHECK(modulus(f, delta, M * 1.5) >= exact);
  }
}

TEST_CASE("modulus agrees with a breakpoint-aligned dense grid exactly") {
  // With dt, delta and M all multiples of the grid step, the dense oracle is exact.
  for (std::uint64_t s = 0; s < 200; ++s) {
    std::vector<double> v;
    for (int m = 0; m < 20; ++m) v.push_back(static_cast<double>(mix64(s * 77 + m) % 17) - 8);
    const Path f(-1.0, 0.125, v);
    const double exact = modulus(f, 0.375, 1.5);
    CHECK(std::abs(exact - dense_modulus(f, 0.375, 1.5, 24 * 16)) <= 1e-9);
  }
}

TEST_CASE("variation") {
  const Path up(0, 1, {0, 1, 3, 4});
  CHECK(variation(up, 0, 3, VariationSign::positive) == 4);
  CHECK(variation(up, 0, 3, VariationSign::negative) == 0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_path(s, 15);
    const double w = f.start_time - 0.2, e = f.end_time() - 0.1;
    const double P = variation(f, w, e, VariationSign::positive);
    const double N = variation(f, w, e, VariationSign::negative);
    CHECK(P - N == doctest::Approx(f(e) - f(w)).epsilon(1e-12));
    // Refinement oracle: uniform partitions approach P from below.
    double prev = 0;
    for (int level = 4; level <= 10; level += 3) {
      const int parts = 1 << level;
      double sum = 0;
      for (int i = 0; i < parts; ++i) {
        const double a = w + (e - w) * i / parts, b = w + (e - w) * (i + 1) / parts;
        sum += std::max(0.0, f(b) - f(a));
      }
      CHECK(sum <= P + 1e-12);
      CHECK(sum >= prev - 1e-12);
      prev = sum;
    }
    CHECK(P - prev < 0.05);
  }
  CHECK_THROWS(variation(up, 2, 1, VariationSign::positive));
}

TEST_CASE("epigraph embedding") {
  const Point2 u{0, 0}, v{3, 4};
  CHECK(epigraph_embed(u, v, 0)[4] == 0);
  const double r = 5;  // |(0,0,3,4)|
  CHECK(epigraph_embed(u, v, kInf)[4] == doctest::Approx(5 * std::exp(-r)));
  CHECK(epigraph_embed(u, v, -kInf)[4] == doctest::Approx(-5 * std::exp(-r)));
  CHECK(epigraph_embed(u, v, 1)[4] == doctest::Approx(5 * std::exp(-r) / 2));
  for (const double val : {0.0, 1.0, 7.0, kInf}) CHECK(epigraph_embed(v, v, val)[4] == 0);
}

TEST_CASE("epigraph distance") {
  DistanceSample a{{{{0, 0}, {1, 0}, 0}, {{0, 0}, {0, 1}, 2}}};
  CHECK(epigraph_distance(a, a) == 0);
  DistanceSample zero{{{{0, 0}, {1, 0}, 0}}}, inf{{{{0, 0}, {1, 0}, std::nullopt}}};
  // The ray from 0 contains levels 0..8 and inf; the inf sample is one point,
  // so the worst gap is from level 0 to the inf level.
  CHECK(epigraph_distance(zero, inf) == doctest::Approx(std::exp(-1.0)));

  // Brute-force Hausdorff over the explicit point sets.
  DistanceSample b{{{{0, 0}, {1, 0}, 3}, {{0, 0}, {0, 1}, std::nullopt}}};
  auto points = [](const DistanceSample& s) {
    std::vector<Point5> out;
    for (const auto& e : s.points) {
      if (e.value)
        for (int y = *e.value; y <= 8; ++y) out.push_back(epigraph_embed(e.u, e.v, y));
      out.push_back(epigraph_embed(e.u, e.v, kInf));
    }
    return out;
  };
  const auto pa = points(a), pb = points(b);
  auto dist = [](const Point5& p, const Point5& q) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
    return std::sqrt(s);
  };
  double h = 0;
  for (const auto& p : pa) {
    double m = kInf;
    for (const auto& q : pb) m = std::min(m, dist(p, q));
    h = std::max(h, m);
  }
  for (const auto& q : pb) {
    double m = kInf;
    for (const auto& p : pa) m = std::min(m, dist(p, q));
    h = std::max(h, m);
  }
  CHECK(epigraph_distance(a, b) == h);

  DistanceSample other{{{{0, 0}, {2, 0}, 0}, {{0, 0}, {0, 1}, 2}}};
  CHECK_THROWS_AS(epigraph_distance(a, other), KeyMismatch);
  DistanceSample dup{{{{0, 0}, {1, 0}, 0}, {{0, 0}, {1, 0}, 1}}};
  CHECK_THROWS(dup.validate());
}
