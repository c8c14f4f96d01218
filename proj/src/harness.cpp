#include "fppweb/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"

#include "fppweb/csv.hpp"
#include "fppweb/error.hpp"
#include "fppweb/metrics.hpp"
#include "fppweb/oracle.hpp"
#include "fppweb/parallel.hpp"
#include "fppweb/stats.hpp"

namespace fppweb {

namespace {

constexpr std::size_t kMaxDetails = 50;
constexpr double kInf = std::numeric_limits<double>::infinity();

Rational last_time(const Itinerary& it) { return it.k() == 0 ? it.s : it.sigma.back(); }

}  // namespace

void TrialPlan::validate() const {
  if (seeds.count == 0) throw std::invalid_argument("plan " + name + ": empty seed range");
  if (n_values.empty()) throw std::invalid_argument("plan " + name + ": no n values");
  for (const auto n : n_values) {
    if (n < 1) throw std::invalid_argument("plan " + name + ": n must be positive");
    if (!allow_nonsquare && !is_perfect_square(n))
      throw std::invalid_argument("plan " + name + ": n = " + std::to_string(n) +
                                  " is not a perfect square (set allow_nonsquare)");
  }
  itinerary.validate();
  if (!(horizon > last_time(itinerary)))
    throw std::invalid_argument("plan " + name + ": horizon must exceed the last itinerary time");
}

Window TrialPlan::window_for(std::int64_t n) const {
  return window ? *window : auto_window(spec, jumps, n, itinerary, horizon);
}

std::uint64_t field_seed(std::uint64_t base_seed, std::uint64_t s) {
  return mix64(mix64(base_seed ^ 0xa4093822299f31d0ULL) + s * kTimeStride);
}

// ---------------------------------------------------------------------------
// Report plumbing

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.informational || c.passed; });
}

void SuiteReport::merge(const SuiteReport& other) {
  for (const auto& c : other.checks) {
    auto it = std::find_if(checks.begin(), checks.end(),
                           [&](const CheckResult& x) { return x.id == c.id && x.exact && c.exact; });
    if (it == checks.end()) {
      checks.push_back(c);
      continue;
    }
    it->trials += c.trials;
    it->violations += c.violations;
    it->worst_margin = std::min(it->worst_margin, c.worst_margin);
    it->passed = it->passed && c.passed;
    for (const auto& d : c.details)
      if (it->details.size() < kMaxDetails) it->details.push_back(d);
  }
  samples.insert(samples.end(), other.samples.begin(), other.samples.end());
  aborted_trials += other.aborted_trials;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = passed();
  doc["aborted_trials"] = aborted_trials;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["exact"] = c.exact;
    j["informational"] = c.informational;
    j["trials"] = c.trials;
    j["violations"] = c.violations;
    j["worst_margin"] = number_or_null(c.worst_margin);
    j["statistic"] = c.statistic ? number_or_null(*c.statistic) : nullptr;
    j["tolerance"] = c.tolerance ? number_or_null(*c.tolerance) : nullptr;
    j["passed"] = c.passed;
    auto det = nlohmann::ordered_json::array();
    for (const auto& d : c.details)
      det.push_back({{"seed", d.seed},
                     {"n", d.n},
                     {"itinerary", d.itinerary},
                     {"time_index", d.time_index},
                     {"amount", d.amount}});
    j["details"] = std::move(det);
    arr.push_back(std::move(j));
  }
  doc["checks"] = std::move(arr);
  auto files = nlohmann::ordered_json::array();
  for (const auto& s : samples) files.push_back(s.first);
  doc["samples"] = std::move(files);
  doc["notes"] = notes;
  return doc.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> SuiteReport::violation_csvs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : checks) {
    std::string s = "seed,n,itinerary,time_index,amount\n";
    for (const auto& d : c.details)
      s += std::to_string(d.seed) + "," + std::to_string(d.n) + "," + csv_quote(d.itinerary) + "," +
           std::to_string(d.time_index) + "," + format_number(d.amount) + "\n";
    out.emplace_back("violations_" + c.id + ".csv", std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact invariants

namespace {

/// Per-trial tally for one check; folded into a CheckResult in seed order.
struct Tally {
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double worst = kInf;
  std::vector<Violation> details;
};

struct TrialOutcome {
  bool aborted = false;
  std::string note;
  std::map<std::string, Tally> tallies;
};

class Recorder {
 public:
  Recorder(TrialOutcome& out, std::uint64_t seed, std::int64_t n, std::string itinerary)
      : out_(out), seed_(seed), n_(n), itinerary_(std::move(itinerary)) {}

  // One trial of `id`; slack < 0 at any time index is a violation.
  void begin(const std::string& id) { out_.tallies[id].trials += 1; }
  void observe(const std::string& id, std::int64_t time_index, double slack) {
    auto& t = out_.tallies[id];
    t.worst = std::min(t.worst, slack);
    if (slack < 0) {
      ++t.violations;
      if (t.details.size() < kMaxDetails) t.details.push_back({seed_, n_, itinerary_, time_index, -slack});
    }
  }

 private:
  TrialOutcome& out_;
  std::uint64_t seed_;
  std::int64_t n_;
  std::string itinerary_;
};

constexpr double kModulusSlack = 1e-9;

void check_bundle(const ReflectionBundle& b, std::int64_t n, const Itinerary& it,
                  const Rational& horizon, Recorder& rec) {
  const auto& lb = b.lattice;
  const int eta = lb.eta;
  const std::size_t len = lb.S.size();
  const std::size_t off = static_cast<std::size_t>(lb.tk - lb.t0);

  // G - S moves with eta between consecutive lattice times after the jump.
  rec.begin("increment-domination");
  for (std::size_t m = 0; m + 1 < len; ++m) {
    const auto dg = lb.G[off + m + 1] - lb.G[off + m];
    const auto ds = lb.S[m + 1] - lb.S[m];
    rec.observe("increment-domination", lb.tk + static_cast<std::int64_t>(m) + 1,
                static_cast<double>(eta * (dg - ds)));
  }

  rec.begin("reflection-order");
  for (std::size_t m = 0; m < len; ++m)
    rec.observe("reflection-order", lb.tk + static_cast<std::int64_t>(m),
                static_cast<double>(eta * (lb.G[off + m] - lb.R[m])));

  rec.begin("disjoint-increments");
  const bool disjoint = check_disjoint_increments(b, n, it);
  for (std::size_t m = 1; m + 1 < len; ++m)
    rec.observe("disjoint-increments", lb.tk + static_cast<std::int64_t>(m),
                static_cast<double>(eta * (lb.beta[m] - lb.base[m]) - 1));
  if (!disjoint) rec.observe("disjoint-increments", lb.tk, -1.0);

  rec.begin("push-monotone");
  for (std::size_t m = 0; m + 1 < len; ++m)
    rec.observe("push-monotone", lb.tk + static_cast<std::int64_t>(m) + 1,
                static_cast<double>(lb.I[m + 1] - lb.I[m]));

  // Error bound in lattice units: time scales by n.
  const Path I_lat(static_cast<double>(lb.tk), 1.0,
                   std::vector<double>(lb.I.begin(), lb.I.end()));
  const double M = horizon.to_double() * static_cast<double>(n);
  for (const double delta : {0.1, 0.5}) {
    const std::string id = delta == 0.1 ? "error-bound-0.1" : "error-bound-0.5";
    rec.begin(id);
    const double dl = delta * static_cast<double>(n);
    const double mod = modulus(I_lat, dl, M);
    for (std::int64_t t = lb.t0; t <= lb.t_end(); ++t) {
      if (static_cast<double>(t) > M) break;
      // Earliest grid w with t - w < dl; wider windows only grow the sup.
      std::int64_t w = t - static_cast<std::int64_t>(std::ceil(dl)) + 1;
      w = std::max({w, lb.t0, static_cast<std::int64_t>(std::ceil(-M))});
      std::int64_t sup = 0;
      for (std::int64_t a = w; a <= t; ++a) sup = std::max(sup, lb.E[static_cast<std::size_t>(a - lb.t0)]);
      const double rhs = static_cast<double>(lb.E[static_cast<std::size_t>(t - lb.t0)]) + mod;
      rec.observe(id, t, rhs - static_cast<double>(sup));
    }
  }

  // Modulus of the reflection against those of its inputs.
  const Path S_lat(static_cast<double>(lb.tk), 1.0, std::vector<double>(lb.S.begin(), lb.S.end()));
  const Path B_lat(static_cast<double>(lb.tk), 1.0,
                   std::vector<double>(lb.base.begin(), lb.base.end()));
  const Path R_lat(static_cast<double>(lb.tk), 1.0, std::vector<double>(lb.R.begin(), lb.R.end()));
  rec.begin("reflection-modulus");
  for (const double delta : {0.1, 0.5}) {
    const double dl = delta * static_cast<double>(n);
    const double lhs = modulus(R_lat, dl, M);
    const double rhs = 2.0 * modulus(S_lat, dl, M) + modulus(B_lat, dl, M);
    rec.observe("reflection-modulus", lb.tk, rhs - lhs + kModulusSlack);
  }
}

TrialOutcome run_trial(const TrialPlan& plan, std::int64_t n, std::uint64_t seed,
                       const RunOptions& opts) {
  TrialOutcome out;
  Recorder rec(out, seed, n, plan.itinerary.str());
  const IncrementField field(field_seed(opts.base_seed, seed), plan.spec);
  const Window window = plan.window_for(n);
  try {
    if (plan.itinerary.k() == 0) {
      // Without jumps the journey is the walk itself.
      const auto j = journey_lattice(field, plan.jumps, n, plan.itinerary, plan.horizon, window);
      const auto w = rescaled_walk_lattice(field, n, plan.itinerary.x, plan.itinerary.s, plan.horizon);
      rec.begin("walk-journey");
      for (std::int64_t t = j.path.t0; t <= j.path.t_end(); ++t)
        rec.observe("walk-journey", t, j.path.at(t) == w.at(t) ? 0.0 : -1.0);
      return out;
    }
    const auto b = approximation_bundle(field, plan.jumps, n, plan.itinerary, plan.horizon, window);
    check_bundle(b, n, plan.itinerary, plan.horizon, rec);
  } catch (const MarginViolation& e) {
    out = TrialOutcome{};
    out.aborted = true;
    out.note = "plan " + plan.name + " seed " + std::to_string(seed) + " n " + std::to_string(n) +
               ": " + e.what();
  }
  return out;
}

SuiteReport fold(const std::vector<TrialOutcome>& outcomes) {
  SuiteReport report;
  std::map<std::string, CheckResult> by_id;
  std::vector<std::string> order;
  for (const auto& o : outcomes) {
    if (o.aborted) {
      ++report.aborted_trials;
      report.notes.push_back(o.note);
      continue;
    }
    for (const auto& [id, t] : o.tallies) {
      auto [it, fresh] = by_id.try_emplace(id);
      auto& c = it->second;
      if (fresh) {
        order.push_back(id);
        c.id = id;
        c.worst_margin = kInf;
      }
      c.trials += t.trials;
      c.violations += t.violations;
      c.worst_margin = std::min(c.worst_margin, t.worst);
      for (const auto& d : t.details)
        if (c.details.size() < kMaxDetails) c.details.push_back(d);
    }
  }
  std::sort(order.begin(), order.end());
  for (const auto& id : order) {
    auto c = by_id[id];
    c.passed = c.violations == 0;
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace

SuiteReport run_exact_suite(std::span<const TrialPlan> plans, const RunOptions& opts) {
  struct Job {
    const TrialPlan* plan;
    std::int64_t n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& p : plans) {
    p.validate();
    for (const auto n : p.n_values)
      for (std::uint64_t s = 0; s < p.seeds.count; ++s) jobs.push_back({&p, n, p.seeds.first + s});
  }
  std::vector<TrialOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), opts.workers, [&](std::size_t i) {
    outcomes[i] = run_trial(*jobs[i].plan, jobs[i].n, jobs[i].seed, opts);
  });
  auto report = fold(outcomes);
  if (report.aborted_trials > 0)
    report.notes.push_back("aborted trials hit the window margin; enlarge the window or let it auto-size");
  return report;
}

SuiteReport run_exact_suite(const TrialPlan& plan, const RunOptions& opts) {
  return run_exact_suite(std::span<const TrialPlan>(&plan, 1), opts);
}

SuiteReport run_modulus_suite(std::int64_t pairs, std::uint64_t seed) {
  if (pairs < 1) throw std::invalid_argument("modulus suite: pairs must be positive");
  // Dyadic grids, values and window lengths keep every comparison exact.
  const double dt = 1.0 / 16.0;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(pairs));
  for (std::int64_t p = 0; p < pairs; ++p) {
    auto& out = outcomes[static_cast<std::size_t>(p)];
    const std::uint64_t key = mix64(seed ^ mix64(static_cast<std::uint64_t>(p) + 0x51ed27ULL));
    std::uint64_t counter = 0;
    auto next = [&] { return mix64(key + (counter++) * kSpaceStride); };
    auto uniform_int = [&](std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const double start = static_cast<double>(uniform_int(-32, 16)) * dt;
    const auto len = static_cast<std::size_t>(uniform_int(2, 120));
    const double v0 = static_cast<double>(uniform_int(-16, 16)) * dt;
    std::vector<double> f(len);
    std::vector<double> g(len);
    f[0] = g[0] = v0;
    for (std::size_t m = 1; m < len; ++m) {
      f[m] = f[m - 1] + static_cast<double>(uniform_int(-8, 8)) * dt;
      g[m] = g[m - 1] + static_cast<double>(uniform_int(-8, 8)) * dt;
    }
    const Path fp(start, dt, f);
    const Path gp(start, dt, g);
    const double M = static_cast<double>(uniform_int(8, 96)) * dt;
    Recorder rec(out, seed, 1, "pair " + std::to_string(p));
    for (const Side side : {Side::right, Side::left}) {
      const std::string id = side == Side::right ? "modulus-bound-right" : "modulus-bound-left";
      rec.begin(id);
      const Path h = skorokhod_reflect(fp, gp, side);
      for (const double delta : {0.125, 0.5}) {
        const double slack = 2.0 * modulus(fp, delta, M) + modulus(gp, delta, M) - modulus(h, delta, M);
        rec.observe(id, p, slack);
      }
    }
  }
  return fold(outcomes);
}

std::vector<TrialPlan> default_matrix() {
  const Rational x(1, 3);
  const Rational s(-1, 2);
  const std::vector<Rational> sig{Rational(0), Rational(1, 3), Rational(2, 3)};
  struct Shape {
    const char* tag;
    std::size_t k;
    std::vector<int> eta;
  };
  const std::vector<Shape> shapes{{"k0", 0, {}},
                                  {"k1+", 1, {1}},
                                  {"k1-", 1, {-1}},
                                  {"k2", 2, {1, -1}},
                                  {"k3", 3, {-1, 1, 1}}};
  std::vector<TrialPlan> plans;
  for (const char* spec : {"simple", "lazy", "pm12"})
    for (const char* jumps : {"fig5", "cross"})
      for (const auto& sh : shapes) {
        Itinerary it{x, s, std::vector<Rational>(sig.begin(), sig.begin() + static_cast<std::ptrdiff_t>(sh.k)),
                     sh.eta};
        plans.push_back(TrialPlan{std::string(spec) + "/" + jumps + "/" + sh.tag,
                                  {0, 100},
                                  {1, 4, 16},
                                  *presets::by_name(spec),
                                  *presets::jumps_by_name(jumps),
                                  it,
                                  Rational(2),
                                  std::nullopt,
                                  false});
      }
  return plans;
}

// ---------------------------------------------------------------------------
// Distribution checks

namespace {

std::string samples_csv(const std::vector<double>& empirical, const std::vector<double>& oracle) {
  std::string s = "empirical,oracle\n";
  const std::size_t rows = std::max(empirical.size(), oracle.size());
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < empirical.size()) s += format_number(empirical[i]);
    s += ",";
    if (i < oracle.size()) s += format_number(oracle[i]);
    s += "\n";
  }
  return s;
}

CheckResult law_check(const std::string& id, std::int64_t n, const std::vector<double>& empirical,
                      const std::vector<double>& oracle, double tolerance) {
  CheckResult c;
  c.id = id;
  c.exact = false;
  c.informational = n == 1;
  c.trials = static_cast<std::int64_t>(empirical.size());
  c.tolerance = tolerance;
  if (empirical.empty()) {
    c.passed = false;
    return c;
  }
  c.statistic = ks_two_sample(empirical, oracle);
  c.worst_margin = tolerance - *c.statistic;
  c.passed = *c.statistic <= tolerance;
  if (!c.passed) c.violations = 1;
  return c;
}

}  // namespace

SuiteReport run_distribution_suite(const TrialPlan& plan, const DistributionOptions& dopts,
                                   const RunOptions& opts) {
  plan.validate();
  SuiteReport report;
  const double sigma = plan.spec.sigma();
  const std::uint64_t oracle_seed = mix64(opts.base_seed ^ 0x0f1e2d3c4b5a6978ULL);
  const auto count = static_cast<std::size_t>(plan.seeds.count);

  for (const auto n : plan.n_values) {
    const double scale = sigma * std::sqrt(static_cast<double>(n));
    const std::string suffix = "-n" + std::to_string(n);

    if (dopts.boundary_check) {
      const std::int64_t x0 = ceil_space_index(plan.itinerary.x, n);
      const std::int64_t t0 = ceil_time_index(plan.itinerary.s, n);
      const Itinerary bare{plan.itinerary.x, plan.itinerary.s, {}, {}};
      const Window window = plan.window ? *plan.window
                                        : auto_window(plan.spec, plan.jumps, n, bare, plan.itinerary.s + Rational(1));
      std::vector<std::optional<double>> slots(count);
      parallel_for(count, opts.workers, [&](std::size_t i) {
        const IncrementField field(field_seed(opts.base_seed, plan.seeds.first + i), plan.spec);
        try {
          const auto b = boundary_lattice(field, plan.jumps, {x0, t0}, dopts.boundary_side, t0 + n, window);
          slots[i] = static_cast<double>(b.at(t0 + n) - b.at(t0)) / scale;
        } catch (const MarginViolation&) {
        }
      });
      std::vector<double> emp;
      for (const auto& s : slots)
        if (s) emp.push_back(*s); else ++report.aborted_trials;
      const Side oracle_side = dopts.flip_oracle_side ? opposite(dopts.boundary_side) : dopts.boundary_side;
      const auto oracle = reflected_bm_oracle(1.0, oracle_side, dopts.oracle_trials, oracle_seed,
                                              dopts.oracle_dt, opts.workers);
      const std::string id = std::string("boundary-law") + (dopts.flip_oracle_side ? "-mismatch" : "") + suffix;
      report.checks.push_back(law_check(id, n, emp, oracle.reflected, dopts.tolerance));
      report.samples.emplace_back(id + ".csv", samples_csv(emp, oracle.reflected));
    }

    if (dopts.reflection_check && plan.itinerary.k() > 0) {
      const Window window = plan.window_for(n);
      std::vector<std::optional<double>> slots(count);
      std::int64_t span = 0;
      parallel_for(count, opts.workers, [&](std::size_t i) {
        const IncrementField field(field_seed(opts.base_seed, plan.seeds.first + i), plan.spec);
        try {
          const auto b = approximation_bundle(field, plan.jumps, n, plan.itinerary, plan.horizon, window);
          slots[i] = static_cast<double>(b.lattice.R.back() - b.lattice.R.front()) / scale;
        } catch (const MarginViolation&) {
        }
      });
      span = ceil_time_index(plan.horizon, n) - ceil_time_index(plan.itinerary.sigma.back(), n);
      std::vector<double> emp;
      for (const auto& s : slots)
        if (s) emp.push_back(*s); else ++report.aborted_trials;
      const Side side = plan.itinerary.eta.back() == 1 ? Side::right : Side::left;
      const Side oracle_side = dopts.flip_oracle_side ? opposite(side) : side;
      const double t = static_cast<double>(span) / static_cast<double>(n);
      const auto oracle = reflected_bm_oracle(t, oracle_side, dopts.oracle_trials, oracle_seed + 1,
                                              std::min(dopts.oracle_dt, 1e-3 * t), opts.workers);
      const std::string id = std::string("reflection-law") + (dopts.flip_oracle_side ? "-mismatch" : "") + suffix;
      report.checks.push_back(law_check(id, n, emp, oracle.reflected, dopts.tolerance));
      report.samples.emplace_back(id + ".csv", samples_csv(emp, oracle.reflected));
    }
  }
  if (report.aborted_trials > 0)
    report.notes.push_back(std::to_string(report.aborted_trials) +
                           " trials hit the window margin and were dropped");
  return report;
}

// ---------------------------------------------------------------------------
// Convergence trend

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

struct KeyGrid {
  std::vector<RationalPoint> sources;
  std::vector<RationalPoint> targets;
};

// Keys on the lattice of the coarsest n, hence on every finer one whose
// space and time scalings are multiples of it.
KeyGrid key_grid(std::int64_t n_min, const Itinerary& it) {
  const std::int64_t r = std::max<std::int64_t>(1, isqrt(n_min));
  const Rational dx(1, r);
  const Rational t0(ceil_time_index(it.s, n_min), n_min);
  const Rational x0(ceil_space_index(it.x, n_min), r);
  KeyGrid g;
  for (int i = -1; i <= 1; ++i) g.sources.push_back({x0 + Rational(i) * dx, t0});
  for (int j = 1; j <= 3; ++j)
    for (int i = -3; i <= 3; ++i)
      g.targets.push_back({x0 + Rational(i) * dx, t0 + Rational(j, r)});
  return g;
}

std::optional<DistanceSample> sample_distances(const IncrementField& field, const JumpSet& jumps,
                                               std::int64_t n, const KeyGrid& keys,
                                               const Window& window) {
  DistanceSample ds;
  for (const auto& u : keys.sources) {
    const auto lu = unscale(u, n);
    if (!lu) return std::nullopt;
    std::int64_t horizon = lu->t;
    std::vector<LatticePoint> lvs;
    for (const auto& v : keys.targets) {
      const auto lv = unscale(v, n);
      if (!lv) return std::nullopt;
      lvs.push_back(*lv);
      horizon = std::max(horizon, lv->t);
    }
    const auto f = propagate(field, jumps, *lu, horizon, window, {3, true});
    for (std::size_t k = 0; k < keys.targets.size(); ++k) {
      const auto& v = keys.targets[k];
      const auto* lv = &lvs[k];
      ds.points.push_back({{u.x.to_double(), u.t.to_double()},
                           {v.x.to_double(), v.t.to_double()},
                           f.at(lv->x, lv->t)});
    }
  }
  return ds;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const TrialPlan& plan, std::int64_t n_ref,
                                              const RunOptions& opts) {
  plan.validate();
  if (!std::is_sorted(plan.n_values.begin(), plan.n_values.end()))
    throw std::invalid_argument("convergence_study: n_values must be sorted ascending");
  if (n_ref < plan.n_values.back())
    throw std::invalid_argument("convergence_study: n_ref must be at least max(n_values)");

  const auto count = static_cast<std::size_t>(plan.seeds.count);
  const double sigma = plan.spec.sigma();
  const KeyGrid keys = key_grid(plan.n_values.front(), plan.itinerary);

  struct PerSeed {
    std::optional<double> endpoint;
    std::optional<DistanceSample> distances;
  };
  auto run_level = [&](std::int64_t n) {
    std::vector<PerSeed> out(count);
    const Window window = plan.window_for(n);
    const Itinerary bare{plan.itinerary.x, plan.itinerary.s, {}, {}};
    const Window key_window = auto_window(plan.spec, plan.jumps, n, bare, keys.targets.back().t);
    parallel_for(count, opts.workers, [&](std::size_t i) {
      const IncrementField field(field_seed(opts.base_seed, plan.seeds.first + i), plan.spec);
      try {
        const auto j = journey_lattice(field, plan.jumps, n, plan.itinerary, plan.horizon, window);
        out[i].endpoint = static_cast<double>(j.path.pos.back()) / (sigma * std::sqrt(static_cast<double>(n)));
        out[i].distances = sample_distances(field, plan.jumps, n, keys, key_window);
      } catch (const MarginViolation&) {
        out[i] = {};
      }
    });
    return out;
  };

  const auto ref = run_level(n_ref);
  std::vector<double> ref_endpoints;
  for (const auto& r : ref)
    if (r.endpoint) ref_endpoints.push_back(*r.endpoint);
  std::sort(ref_endpoints.begin(), ref_endpoints.end());

  std::vector<ConvergenceRow> rows;
  for (const auto n : plan.n_values) {
    const auto level = n == n_ref ? ref : run_level(n);
    std::vector<double> ends;
    for (const auto& r : level)
      if (r.endpoint) ends.push_back(*r.endpoint);
    std::sort(ends.begin(), ends.end());
    // Quantile coupling: pair the i-th order statistic with the matching
    // quantile of the reference sample.
    std::vector<double> diffs;
    for (std::size_t i = 0; i < ends.size() && !ref_endpoints.empty(); ++i) {
      const std::size_t k = ends.size() == 1 ? 0 : i * (ref_endpoints.size() - 1) / (ends.size() - 1);
      diffs.push_back(std::abs(ends[i] - ref_endpoints[k]));
    }
    std::vector<double> epi;
    for (std::size_t i = 0; i < count; ++i)
      if (level[i].distances && ref[i].distances)
        epi.push_back(epigraph_distance(*level[i].distances, *ref[i].distances));
    rows.push_back({n, median(diffs), median(epi)});
  }
  return rows;
}

bool weakly_decreasing_steps(const std::vector<ConvergenceRow>& rows, int needed) {
  int hits = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    if (rows[i + 1].journey_endpoint <= rows[i].journey_endpoint) ++hits;
  return hits >= needed;
}

}  // namespace fppweb
