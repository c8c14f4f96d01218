#pragma once

// Independent reference implementations used to freeze expected values.
// Deliberately naive: explicit graphs, dense grids, exhaustive search.

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "fppweb/fpp.hpp"
#include "fppweb/increment.hpp"

namespace oracle {

/// 0-1 BFS on the explicit window graph. Returns distances indexed
/// [(t - t_min) * width + (x - x_min)], -1 for unreachable.
inline std::vector<int> dijkstra(const fppweb::IncrementField& field, const fppweb::JumpSet& jumps,
                                 fppweb::LatticePoint src, const fppweb::Window& w) {
  const auto width = w.width();
  const auto height = w.t_max - w.t_min + 1;
  std::vector<int> dist(static_cast<std::size_t>(width * height), -1);
  auto id = [&](std::int64_t x, std::int64_t t) {
    return static_cast<std::size_t>((t - w.t_min) * width + (x - w.x_min));
  };
  std::deque<fppweb::LatticePoint> q;
  std::vector<int> best(dist.size(), std::numeric_limits<int>::max());
  best[id(src.x, src.t)] = 0;
  q.push_back(src);
  while (!q.empty()) {
    const auto u = q.front();
    q.pop_front();
    const int du = best[id(u.x, u.t)];
    if (dist[id(u.x, u.t)] >= 0) continue;
    dist[id(u.x, u.t)] = du;
    auto relax = [&](std::int64_t x, std::int64_t t, int wgt) {
      if (!w.contains(x, t)) return;
      auto& b = best[id(x, t)];
      if (du + wgt < b) {
        b = du + wgt;
        if (wgt == 0) q.push_front({x, t}); else q.push_back({x, t});
      }
    };
    relax(u.x + fppweb::sample_increment(field, u.x, u.t), u.t + 1, 0);
    for (const auto& o : jumps.offsets()) relax(u.x + o.dx, u.t + o.dt, 1);
  }
  return dist;
}

}  // namespace oracle
