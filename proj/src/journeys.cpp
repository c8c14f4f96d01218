#include "fppweb/journeys.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fppweb/error.hpp"

namespace fppweb {

void Itinerary::validate() const {
  if (sigma.size() != eta.size())
    throw std::invalid_argument("itinerary: sigma and eta lengths differ");
  Rational prev = s;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!(prev < sigma[i]))
      throw std::invalid_argument("itinerary: jump times must strictly increase after s");
    if (eta[i] != 1 && eta[i] != -1) throw std::invalid_argument("itinerary: eta must be +1 or -1");
    prev = sigma[i];
  }
}

std::string Itinerary::str() const {
  std::string out = "(" + x.str() + "," + s.str() + ",[";
  for (std::size_t i = 0; i < sigma.size(); ++i) out += (i ? " " : "") + sigma[i].str();
  out += "],[";
  for (std::size_t i = 0; i < eta.size(); ++i) out += (i ? " " : "") + std::to_string(eta[i]);
  return out + "])";
}

Itinerary restrict(const Itinerary& it, std::size_t j) {
  if (j > it.k()) throw std::invalid_argument("restrict: index beyond itinerary length");
  Itinerary out{it.x, it.s, {}, {}};
  out.sigma.assign(it.sigma.begin(), it.sigma.begin() + static_cast<std::ptrdiff_t>(j));
  out.eta.assign(it.eta.begin(), it.eta.begin() + static_cast<std::ptrdiff_t>(j));
  return out;
}

namespace {

void check_horizon(const Itinerary& it, const Rational& horizon) {
  it.validate();
  const Rational& last = it.k() == 0 ? it.s : it.sigma.back();
  if (!(horizon > last)) throw std::invalid_argument("horizon must exceed the last itinerary time");
}

Side side_of(int eta) { return eta == 1 ? Side::right : Side::left; }

}  // namespace

LatticeJourney journey_lattice(const IncrementField& field, const JumpSet& jumps, std::int64_t n,
                               const Itinerary& it, const Rational& horizon,
                               const Window& window) {
  check_horizon(it, horizon);
  const std::int64_t t0 = ceil_time_index(it.s, n);
  const std::int64_t t_end = ceil_time_index(horizon, n);
  const std::int64_t x0 = ceil_space_index(it.x, n);
  if (t0 < window.t_min || t_end > window.t_max)
    throw std::invalid_argument("journey: time range outside the window");

  LatticeJourney out{walk_lattice(field, x0, t0, t_end), {}};
  auto& g = out.path;
  for (std::size_t i = 0; i < it.k(); ++i) {
    const std::int64_t ti = ceil_time_index(it.sigma[i], n);
    out.jump_times.push_back(ti);
    if (ti >= t_end) continue;
    const LatticePoint src{g.at(ti), ti};
    const auto frontier = propagate(field, jumps, src, t_end, window, {1, true});
    const Side side = side_of(it.eta[i]);
    for (std::int64_t t = ti + 1; t <= t_end; ++t) {
      const auto e = frontier.extreme(t, side, 1);
      if (!e) throw std::logic_error("journey: empty distance-1 slice");
      g.pos[static_cast<std::size_t>(t - t0)] = *e;
    }
  }
  return out;
}

Path journey(const IncrementField& field, const JumpSet& jumps, std::int64_t n,
             const Itinerary& it, const Rational& horizon, const Window& window) {
  return to_path(journey_lattice(field, jumps, n, it, horizon, window).path, n);
}

std::vector<std::int64_t> reflect_lattice(const std::vector<std::int64_t>& f,
                                          const std::vector<std::int64_t>& g, Side side) {
  if (f.size() != g.size() || f.empty())
    throw GridMismatch("reflect: sequences must be aligned and nonempty");
  std::vector<std::int64_t> h(f.size());
  std::int64_t run = f[0] - g[0];
  for (std::size_t m = 0; m < f.size(); ++m) {
    const std::int64_t d = f[m] - g[m];
    run = side == Side::right ? std::min(run, d) : std::max(run, d);
    h[m] = f[m] - run;
  }
  return h;
}

Path skorokhod_reflect(const Path& f, const Path& g, Side side) {
  if (std::abs(f.dt - g.dt) > 1e-12 * std::max(f.dt, g.dt))
    throw GridMismatch("reflect: grid spacings differ");
  const double dt = f.dt;
  const double offset = (g.start_time - f.start_time) / dt;
  const double rounded = std::round(offset);
  if (std::abs(offset - rounded) > 1e-9) throw GridMismatch("reflect: grids are not aligned");
  const auto shift = static_cast<std::int64_t>(rounded);
  // Index of the common start t3 in each path.
  const std::int64_t fi = std::max<std::int64_t>(0, shift);
  const std::int64_t gi = std::max<std::int64_t>(0, -shift);
  const std::int64_t count = std::min(static_cast<std::int64_t>(f.size()) - fi,
                                      static_cast<std::int64_t>(g.size()) - gi);
  if (count <= 0) throw std::invalid_argument("reflect: path domains do not overlap");

  std::vector<double> h(static_cast<std::size_t>(count));
  double run = 0.0;
  for (std::int64_t m = 0; m < count; ++m) {
    const double a = f.values[static_cast<std::size_t>(fi + m)];
    const double d = a - g.values[static_cast<std::size_t>(gi + m)];
    if (m == 0)
      run = d;
    else
      run = side == Side::right ? std::min(run, d) : std::max(run, d);
    h[static_cast<std::size_t>(m)] = a - run;
  }
  return Path(f.time_at(static_cast<std::size_t>(fi)), dt, std::move(h));
}

ReflectionBundle approximation_bundle(const IncrementField& field, const JumpSet& jumps,
                                      std::int64_t n, const Itinerary& it,
                                      const Rational& horizon, const Window& window) {
  if (it.k() == 0) throw std::invalid_argument("approximation_bundle: needs k >= 1");
  const LatticeJourney j = journey_lattice(field, jumps, n, it, horizon, window);

  LatticeBundle lb;
  lb.t0 = j.path.t0;
  lb.tk = j.jump_times.back();
  lb.eta = it.eta.back();
  lb.G = j.path.pos;
  const std::int64_t t_end = j.path.t_end();
  const auto len = static_cast<std::size_t>(t_end - lb.tk + 1);

  lb.beta.resize(len);
  for (std::size_t m = 0; m < len; ++m) lb.beta[m] = lb.G_at(lb.tk + static_cast<std::int64_t>(m));

  lb.S.resize(len);
  lb.S[0] = lb.beta[0];
  for (std::size_t m = 0; m + 1 < len; ++m)
    lb.S[m + 1] = lb.S[m] + sample_increment(field, lb.beta[m], lb.tk + static_cast<std::int64_t>(m));

  lb.base = walk_lattice(field, lb.beta[0], lb.tk, t_end).pos;
  lb.R = reflect_lattice(lb.S, lb.base, lb.eta == 1 ? Side::right : Side::left);

  lb.I.resize(len);
  for (std::size_t m = 0; m < len; ++m) lb.I[m] = std::abs(lb.R[m] - lb.S[m]);

  lb.Rext = lb.G;
  for (std::size_t m = 1; m < len; ++m)
    lb.Rext[static_cast<std::size_t>(lb.tk - lb.t0) + m] = lb.R[m];
  lb.E.resize(lb.G.size());
  for (std::size_t m = 0; m < lb.G.size(); ++m) lb.E[m] = std::abs(lb.G[m] - lb.Rext[m]);

  ReflectionBundle b;
  b.n = n;
  auto full = [&](const std::vector<std::int64_t>& v) { return to_path({lb.t0, v}, n); };
  auto tail = [&](const std::vector<std::int64_t>& v) { return to_path({lb.tk, v}, n); };
  b.G = full(lb.G);
  b.Rext = full(lb.Rext);
  b.E = full(lb.E);
  b.S = tail(lb.S);
  b.R = tail(lb.R);
  b.I = tail(lb.I);
  b.base_walk = tail(lb.base);
  b.lattice = std::move(lb);
  return b;
}

bool check_disjoint_increments(const ReflectionBundle& bundle, std::int64_t /*n*/,
                               const Itinerary& it) {
  if (it.k() == 0) throw std::invalid_argument("check_disjoint_increments: needs k >= 1");
  const auto& lb = bundle.lattice;
  const int eta = it.eta.back();
  for (std::size_t m = 1; m + 1 < lb.beta.size(); ++m) {
    const bool ok = eta == 1 ? lb.beta[m] > lb.base[m] : lb.beta[m] < lb.base[m];
    if (!ok) return false;
  }
  return true;
}

Window auto_window(const IncrementSpec& spec, const JumpSet& jumps, std::int64_t n,
                   const Itinerary& it, const Rational& horizon) {
  const std::int64_t t0 = ceil_time_index(it.s, n);
  const std::int64_t t_end = std::max(ceil_time_index(horizon, n), t0);
  const std::int64_t x0 = ceil_space_index(it.x, n);
  const double spread = spec.sigma() * std::sqrt(static_cast<double>(t_end - t0 + 1));
  const auto k = static_cast<double>(it.k());
  const std::int64_t step = std::max(jumps.max_abs_dx(), spec.max_abs_step());
  const auto half = static_cast<std::int64_t>(std::ceil(12.0 * spread * (1.0 + k))) +
                    8 * step * static_cast<std::int64_t>(it.k() + 2) + 8;
  return Window(x0 - half, x0 + half, t0, std::max(t_end, t0 + 1));
}

}  // namespace fppweb
