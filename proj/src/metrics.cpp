#include "fppweb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "fppweb/error.hpp"

namespace fppweb {

double phi(double x, double t) {
  if (std::isinf(t)) return 0.0;
  return std::tanh(x) / (1.0 + std::abs(t));
}

namespace {

void add_path_times(const Path& p, int subdivisions, std::vector<double>& out) {
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double t = p.time_at(m);
    out.push_back(t);
    if (m + 1 == p.size()) break;
    for (int q = 1; q <= subdivisions; ++q)
      out.push_back(t + p.dt * static_cast<double>(q) / static_cast<double>(subdivisions + 1));
  }
}

}  // namespace

EvalGrid make_eval_grid(const Path& a, const Path& b, int subdivisions) {
  EvalGrid g;
  add_path_times(a, subdivisions, g.times);
  add_path_times(b, subdivisions, g.times);
  // Both paths are constant on each tail; |Phi difference| there peaks at the
  // point of the tail closest to t = 0.
  const double first = std::min(a.start_time, b.start_time);
  const double last = std::max(a.end_time(), b.end_time());
  g.times.push_back(std::min(first, 0.0));
  g.times.push_back(std::max(last, 0.0));
  g.times.push_back(0.0);
  g.times.push_back(std::numeric_limits<double>::infinity());
  std::sort(g.times.begin(), g.times.end());
  g.times.erase(std::unique(g.times.begin(), g.times.end()), g.times.end());
  return g;
}

double path_distance(const Path& a, const Path& b, const EvalGrid& grid) {
  double d = std::abs(std::tanh(a.start_time) - std::tanh(b.start_time));
  for (const double t : grid.times) d = std::max(d, std::abs(phi(a(t), t) - phi(b(t), t)));
  return d;
}

double path_distance(const Path& a, const Path& b) {
  return path_distance(a, b, make_eval_grid(a, b));
}

double hausdorff(std::span<const Path> a, std::span<const Path> b,
                 const std::optional<EvalGrid>& grid) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty path set");
  auto dist = [&](const Path& p, const Path& q) {
    return grid ? path_distance(p, q, *grid) : path_distance(p, q);
  };
  auto directed = [&](std::span<const Path> from, std::span<const Path> to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double modulus(const Path& f, double delta, double M) {
  if (!(delta > 0.0) || !(M > 0.0)) throw std::invalid_argument("modulus: delta and M must be positive");
  // Breakpoints strictly inside [-M, M].
  std::vector<double> bt;
  std::vector<double> bv;
  for (std::size_t m = 0; m < f.size(); ++m) {
    const double t = f.time_at(m);
    if (t > -M && t < M) {
      bt.push_back(t);
      bv.push_back(f.values[m]);
    }
  }
  auto window_range = [&](double a, double b) {
    double hi = std::max(f(a), f(b));
    double lo = std::min(f(a), f(b));
    const auto first = std::upper_bound(bt.begin(), bt.end(), a) - bt.begin();
    const auto last = std::lower_bound(bt.begin(), bt.end(), b) - bt.begin();
    for (auto i = first; i < last; ++i) {
      hi = std::max(hi, bv[static_cast<std::size_t>(i)]);
      lo = std::min(lo, bv[static_cast<std::size_t>(i)]);
    }
    return hi - lo;
  };
  if (delta >= 2.0 * M) return window_range(-M, M);

  // max - min over a window [a, a + delta] is convex in a between events, so
  // it suffices to try window positions where an end hits a breakpoint.
  std::vector<double> starts{-M, M - delta};
  for (const double t : bt) {
    if (t <= M - delta) starts.push_back(t);
    if (t - delta >= -M) starts.push_back(t - delta);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  // Sliding window over breakpoint indices with monotone deques.
  std::deque<std::size_t> maxq;
  std::deque<std::size_t> minq;
  std::size_t next = 0;
  double best = 0.0;
  for (const double a : starts) {
    const double b = a + delta;
    while (next < bt.size() && bt[next] < b) {
      while (!maxq.empty() && bv[maxq.back()] <= bv[next]) maxq.pop_back();
      while (!minq.empty() && bv[minq.back()] >= bv[next]) minq.pop_back();
      maxq.push_back(next);
      minq.push_back(next);
      ++next;
    }
    while (!maxq.empty() && bt[maxq.front()] <= a) maxq.pop_front();
    while (!minq.empty() && bt[minq.front()] <= a) minq.pop_front();
    const double fa = f(a);
    const double fb = f(b);
    double hi = std::max(fa, fb);
    double lo = std::min(fa, fb);
    if (!maxq.empty()) hi = std::max(hi, bv[maxq.front()]);
    if (!minq.empty()) lo = std::min(lo, bv[minq.front()]);
    best = std::max(best, hi - lo);
  }
  return best;
}

double variation(const Path& f, double w, double s, VariationSign sign) {
  if (!(w < s)) throw std::invalid_argument("variation: need w < s");
  double total = 0.0;
  double prev = f(w);
  auto step = [&](double value) {
    const double inc = value - prev;
    if (sign == VariationSign::positive ? inc > 0 : inc < 0) total += std::abs(inc);
    prev = value;
  };
  for (std::size_t m = 0; m < f.size(); ++m) {
    const double t = f.time_at(m);
    if (t > w && t < s) step(f.values[m]);
  }
  step(f(s));
  return total;
}

Point5 epigraph_embed(const Point2& u, const Point2& v, double value) {
  const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + v[0] * v[0] + v[1] * v[1]);
  const double gap = std::hypot(u[0] - v[0], u[1] - v[1]);
  const double scale = gap * std::exp(-norm);
  double last;
  if (std::isinf(value))
    last = value > 0 ? scale : -scale;
  else
    last = scale * value / (1.0 + std::abs(value));
  return {u[0], u[1], v[0], v[1], last};
}

void DistanceSample::validate() const {
  std::set<std::array<double, 4>> keys;
  for (const auto& e : points)
    if (!keys.insert({e.u[0], e.u[1], e.v[0], e.v[1]}).second)
      throw std::invalid_argument("distance sample: duplicate (u, v) key");
}

namespace {

std::vector<Point5> embed_epigraph(const DistanceSample& s, int cap) {
  std::vector<Point5> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& e : s.points) {
    if (e.value) {
      out.push_back(epigraph_embed(e.u, e.v, *e.value));
      for (int y = *e.value + 1; y <= cap; ++y) out.push_back(epigraph_embed(e.u, e.v, y));
    }
    out.push_back(epigraph_embed(e.u, e.v, inf));
  }
  return out;
}

double euclid(const Point5& a, const Point5& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double directed(const std::vector<Point5>& from, const std::vector<Point5>& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) {
      best = std::min(best, euclid(p, q));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double epigraph_distance(const DistanceSample& a, const DistanceSample& b, int cap) {
  a.validate();
  b.validate();
  std::set<std::array<double, 4>> ka;
  std::set<std::array<double, 4>> kb;
  for (const auto& e : a.points) ka.insert({e.u[0], e.u[1], e.v[0], e.v[1]});
  for (const auto& e : b.points) kb.insert({e.u[0], e.u[1], e.v[0], e.v[1]});
  if (ka != kb) throw KeyMismatch("epigraph_distance: samples use different key grids");
  if (a.points.empty()) return 0.0;
  const auto pa = embed_epigraph(a, cap);
  const auto pb = embed_epigraph(b, cap);
  return std::max(directed(pa, pb), directed(pb, pa));
}

}  // namespace fppweb
