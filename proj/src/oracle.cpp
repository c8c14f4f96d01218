#include "fppweb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fppweb/increment.hpp"
#include "fppweb/parallel.hpp"

namespace fppweb {
namespace {

double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair number `pair` of the stream.
void normal_pair(std::uint64_t key, std::uint64_t pair, double& z0, double& z1) {
  const double u1 = unit_open(mix64(key + (2 * pair) * kTimeStride));
  const double u2 = unit_open(mix64(key + (2 * pair + 1) * kTimeStride));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

}  // namespace

double counter_normal(std::uint64_t key, std::uint64_t counter) {
  double z0 = 0.0;
  double z1 = 0.0;
  normal_pair(key, counter / 2, z0, z1);
  return counter % 2 == 0 ? z0 : z1;
}

OracleSamples reflected_bm_oracle(double t, Side side, std::int64_t trials, std::uint64_t seed,
                                  double dt, int workers) {
  if (!(t > 0.0)) throw std::invalid_argument("oracle: t must be positive");
  if (!(dt > 0.0) || dt > 1e-3 * t * (1.0 + 1e-12))
    throw std::invalid_argument("oracle: dt must satisfy 0 < dt <= 1e-3 t");
  if (trials < 1) throw std::invalid_argument("oracle: trials must be positive");
  const auto steps = static_cast<std::uint64_t>(std::llround(std::ceil(t / dt - 1e-9)));
  const double sd = std::sqrt(t / static_cast<double>(steps));

  OracleSamples out;
  const auto count = static_cast<std::size_t>(trials);
  out.reflected.resize(count);
  out.obstacle.resize(count);
  out.worst_gap.resize(count);
  const std::uint64_t stream = mix64(seed ^ 0x3c6ef372fe94f82bULL);
  parallel_for(count, workers, [&](std::size_t r) {
    const std::uint64_t key = mix64(stream + static_cast<std::uint64_t>(r) * kSpaceStride);
    double b1 = 0.0;
    double b2 = 0.0;
    double run = 0.0;
    double worst = 0.0;
    for (std::uint64_t m = 0; m < steps; ++m) {
      double z1 = 0.0;
      double z2 = 0.0;
      normal_pair(key, m, z1, z2);
      b1 += sd * z1;
      b2 += sd * z2;
      const double d = b1 - b2;
      run = side == Side::right ? std::min(run, d) : std::max(run, d);
      const double gap = d - run;
      worst = side == Side::right ? std::min(worst, gap) : std::max(worst, gap);
    }
    // h = B2 + (d - run) keeps h on the correct side of B2 after rounding.
    out.reflected[r] = b2 + ((b1 - b2) - run);
    out.obstacle[r] = b2;
    out.worst_gap[r] = worst;
  });
  return out;
}

}  // namespace fppweb
