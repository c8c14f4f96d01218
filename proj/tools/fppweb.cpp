// Command-line driver: simulation, distance queries, journeys and the
// verification suites. Every command is a pure function of config, flags and
// seed; exit status 0 = success, 1 = check failure, 2 = usage/config error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fppweb/config.hpp"
#include "fppweb/csv.hpp"
#include "fppweb/error.hpp"
#include "fppweb/fpp.hpp"
#include "fppweb/harness.hpp"
#include "fppweb/journeys.hpp"
#include "fppweb/oracle.hpp"
#include "fppweb/walk.hpp"

namespace fs = std::filesystem;
using namespace fppweb;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out_dir;
};

struct Model {
  std::string spec = "lazy";
  std::string jumps = "fig5";
  std::int64_t n = 1;
  bool allow_nonsquare = false;
  std::string window;
};

struct ItineraryFlags {
  std::string name;
  std::string x = "0";
  std::string s = "0";
  std::vector<std::string> sigma;
  std::vector<int> eta;
  std::string horizon = "1";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  RunConfig cfg;
  std::uint64_t seed = 0;
  int workers = 1;
  fs::path out;
};

Context make_context(const Globals& g) {
  Context c;
  c.cfg = g.config.empty() ? RunConfig::defaults() : RunConfig::load(g.config);
  c.seed = g.seed.value_or(c.cfg.seed);
  c.workers = g.workers;
  c.out = g.out_dir.empty() ? fs::path(c.cfg.output_dir) : fs::path(g.out_dir);
  return c;
}

void check_n(const Model& m) {
  if (m.n < 1) throw UsageError("--n must be positive");
  if (!m.allow_nonsquare && !is_perfect_square(m.n))
    throw UsageError("--n must be a perfect square (pass --allow-nonsquare to override)");
}

Itinerary resolve_itinerary(const Context& c, const ItineraryFlags& f) {
  if (!f.name.empty()) return c.cfg.itinerary(f.name);
  Itinerary it{Rational::parse(f.x), Rational::parse(f.s), {}, f.eta};
  for (const auto& s : f.sigma) it.sigma.push_back(Rational::parse(s));
  it.validate();
  return it;
}

RationalPoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("point '" + text + "' must be x,t");
  return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

Side parse_side(const std::string& s) {
  if (s == "right") return Side::right;
  if (s == "left") return Side::left;
  throw UsageError("side must be left or right");
}

void emit(const fs::path& file, const std::string& text) {
  write_text(file, text);
  std::cout << file.string() << "\n";
}

void add_model_flags(CLI::App* cmd, Model& m) {
  cmd->add_option("--spec", m.spec, "Increment spec name")->capture_default_str();
  cmd->add_option("--jumps", m.jumps, "Jump set name")->capture_default_str();
  cmd->add_option("--n", m.n, "Scaling parameter (perfect square)")->capture_default_str();
  cmd->add_flag("--allow-nonsquare", m.allow_nonsquare, "Accept non-square n");
  cmd->add_option("--window", m.window, "Window name from the config (auto-sized if absent)");
}

void add_itinerary_flags(CLI::App* cmd, ItineraryFlags& f) {
  cmd->add_option("--itinerary", f.name, "Itinerary name from the config");
  cmd->add_option("--x", f.x, "Start position, p/q")->capture_default_str();
  cmd->add_option("--s", f.s, "Start time, p/q")->capture_default_str();
  cmd->add_option("--sigma", f.sigma, "Jump times, p/q each");
  cmd->add_option("--eta", f.eta, "Jump sides, +1 or -1 each");
  cmd->add_option("--horizon", f.horizon, "End time, p/q")->capture_default_str();
}

int run_simulate(const Context& c, const Model& m, std::int64_t walks, std::int64_t width,
                 std::int64_t steps) {
  check_n(m);
  if (walks < 0 || width < 1 || steps < 1) throw UsageError("walks >= 0, width >= 1, steps >= 1");
  const IncrementField field(field_seed(c.seed, 0), c.cfg.spec(m.spec));
  std::string manifest = "file,x,t\n";
  for (std::int64_t i = 0; i < walks; ++i) {
    const std::int64_t x = -width / 2 + (walks > 1 ? i * (width - 1) / (walks - 1) : 0);
    const auto lp = walk_lattice(field, x, 0, steps);
    const std::string name = "walk_" + std::to_string(i) + ".csv";
    write_text(c.out / name, path_csv(to_path(lp, m.n)));
    manifest += name + "," + std::to_string(x) + ",0\n";
  }
  emit(c.out / "manifest.csv", manifest);
  return 0;
}

Window window_or_auto(const Context& c, const Model& m, const Itinerary& it, const Rational& horizon) {
  if (!m.window.empty()) return c.cfg.window(m.window);
  return auto_window(c.cfg.spec(m.spec), c.cfg.jumps(m.jumps), m.n, it, horizon);
}

int run_distance(const Context& c, const Model& m, const std::string& u_text,
                 const std::string& v_text, int max_dist, bool frontier) {
  check_n(m);
  const auto u = parse_point(u_text);
  const auto v = parse_point(v_text);
  const IncrementField field(field_seed(c.seed, 0), c.cfg.spec(m.spec));
  const auto& jumps = c.cfg.jumps(m.jumps);
  const auto lu = unscale(u, m.n);
  const auto lv = unscale(v, m.n);
  if (!lu || !lv) throw UsageError("points must lie on the rescaled lattice");
  // The window spans both points so reversed-time queries resolve to inf.
  const Itinerary bare{u.x, std::min(u.t, v.t), {}, {}};
  const Rational horizon = std::max(v.t, u.t) + Rational(1, m.n);
  const Window window = window_or_auto(c, m, bare, horizon);
  const auto d = distance(field, jumps, *lu, *lv, window, max_dist);
  std::cout << (d ? std::to_string(*d) : "inf") << "\n";
  if (frontier && lv->t >= lu->t) {
    const auto f = propagate(field, jumps, *lu, lv->t, window, {max_dist, true});
    emit(c.out / "frontier.csv", frontier_csv(f));
  }
  return 0;
}

int run_journey(const Context& c, const Model& m, const ItineraryFlags& f, bool bundle) {
  check_n(m);
  const Itinerary it = resolve_itinerary(c, f);
  const Rational horizon = Rational::parse(f.horizon);
  const IncrementField field(field_seed(c.seed, 0), c.cfg.spec(m.spec));
  const Window window = window_or_auto(c, m, it, horizon);
  if (bundle) {
    const auto b = approximation_bundle(field, c.cfg.jumps(m.jumps), m.n, it, horizon, window);
    emit(c.out / "bundle.csv", bundle_csv(b));
  } else {
    emit(c.out / "journey.csv",
         path_csv(journey(field, c.cfg.jumps(m.jumps), m.n, it, horizon, window)));
  }
  return 0;
}

int run_boundary(const Context& c, const Model& m, const std::string& source_text,
                 const std::string& side, const std::string& horizon_text) {
  check_n(m);
  const auto src = parse_point(source_text);
  const auto ls = unscale(src, m.n);
  if (!ls) throw UsageError("source must lie on the rescaled lattice");
  const Rational horizon = Rational::parse(horizon_text);
  if (!(horizon > src.t)) throw UsageError("horizon must exceed the source time");
  const IncrementField field(field_seed(c.seed, 0), c.cfg.spec(m.spec));
  const Itinerary bare{src.x, src.t, {}, {}};
  const Window window = window_or_auto(c, m, bare, horizon);
  const auto lp = boundary_lattice(field, c.cfg.jumps(m.jumps), *ls, parse_side(side),
                                   ceil_time_index(horizon, m.n), window);
  emit(c.out / "boundary.csv", path_csv(to_path(lp, m.n)));
  return 0;
}

std::vector<TrialPlan> selected_plans(const Context& c, const std::vector<std::string>& names) {
  if (names.empty()) return c.cfg.plans.empty() ? default_matrix() : c.cfg.plans;
  std::vector<TrialPlan> out;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& p : c.cfg.plans)
      if (p.name == name) {
        out.push_back(p);
        found = true;
      }
    if (!found) throw ConfigError("plans", "unknown plan '" + name + "'");
  }
  return out;
}

int run_verify(const Context& c, const std::vector<std::string>& names, std::int64_t pairs) {
  const auto plans = selected_plans(c, names);
  const RunOptions opts{c.workers, c.seed};
  SuiteReport report = run_exact_suite(plans, opts);
  if (pairs > 0) report.merge(run_modulus_suite(pairs, c.seed));
  for (const auto& [name, text] : report.violation_csvs()) write_text(c.out / name, text);
  emit(c.out / "report.json", report.to_json());
  for (const auto& chk : report.checks)
    std::cout << (chk.passed ? "ok   " : "FAIL ") << chk.id << " trials=" << chk.trials
              << " violations=" << chk.violations << "\n";
  return report.passed() ? 0 : 1;
}

int run_converge(const Context& c, const std::string& name, std::int64_t n_ref) {
  const auto plans = selected_plans(c, {name});
  const auto rows = convergence_study(plans.front(), n_ref, {c.workers, c.seed});
  emit(c.out / "convergence.csv", convergence_csv(rows));
  return 0;
}

int run_oracle(const Context& c, double t, const std::string& side, std::int64_t trials, double dt) {
  const auto s = reflected_bm_oracle(t, parse_side(side), trials, c.seed, dt, c.workers);
  std::string text = "reflected,obstacle,worst_gap\n";
  for (std::size_t i = 0; i < s.reflected.size(); ++i)
    text += format_number(s.reflected[i]) + "," + format_number(s.obstacle[i]) + "," +
            format_number(s.worst_gap[i]) + "\n";
  emit(c.out / "oracle.csv", text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verification harness for first-passage percolation on coalescing random-walk webs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("--seed", g.seed, "Base seed (overrides the config)");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Output directory (overrides the config)");

  Model m;
  ItineraryFlags itf;

  auto* simulate = app.add_subcommand("simulate", "Write walk paths of one web realization");
  std::int64_t walks = 10, width = 200, steps = 200;
  add_model_flags(simulate, m);
  simulate->add_option("--walks", walks, "Number of walks")->capture_default_str();
  simulate->add_option("--width", width, "Spread of starting positions (lattice units)")->capture_default_str();
  simulate->add_option("--steps", steps, "Lattice steps per walk")->capture_default_str();

  auto* dist = app.add_subcommand("distance", "Print the jump-count distance between two points");
  std::string u_text, v_text;
  int max_dist = 3;
  bool frontier = false;
  add_model_flags(dist, m);
  dist->add_option("--u", u_text, "Source point x,t (rational coordinates)")->required();
  dist->add_option("--v", v_text, "Target point x,t")->required();
  dist->add_option("--max-dist", max_dist, "Distances above this print as inf")
      ->check(CLI::Range(0, DistanceFrontier::kMaxDist))->capture_default_str();
  dist->add_flag("--frontier", frontier, "Also write frontier.csv");

  auto* jour = app.add_subcommand("journey", "Write one journey path");
  add_model_flags(jour, m);
  add_itinerary_flags(jour, itf);

  auto* bund = app.add_subcommand("bundle", "Write the reflection bundle of a journey");
  add_model_flags(bund, m);
  add_itinerary_flags(bund, itf);

  auto* bound = app.add_subcommand("boundary", "Write a distance-one boundary curve");
  std::string source = "0,0", side = "right", b_horizon = "1";
  add_model_flags(bound, m);
  bound->add_option("--source", source, "Source point x,t")->capture_default_str();
  bound->add_option("--side", side, "left or right")->capture_default_str();
  bound->add_option("--horizon", b_horizon, "End time, p/q")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the exact invariant suites");
  std::vector<std::string> plan_names;
  std::int64_t pairs = 200;
  verify->add_option("--plan", plan_names, "Plan names (default: config plans, else the default matrix)");
  verify->add_option("--modulus-pairs", pairs, "Random pairs for the reflection modulus check")
      ->capture_default_str();

  auto* conv = app.add_subcommand("converge", "Convergence-trend study for one plan");
  std::string conv_plan;
  std::int64_t n_ref = 1600;
  conv->add_option("--plan", conv_plan, "Plan name from the config")->required();
  conv->add_option("--n-ref", n_ref, "Reference scaling parameter")->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "Sample the reflected Brownian motion oracle");
  double t = 1.0, dt = 1e-3;
  std::int64_t trials = 5000;
  std::string o_side = "right";
  orc->add_option("--t", t, "Time")->capture_default_str();
  orc->add_option("--side", o_side, "left or right")->capture_default_str();
  orc->add_option("--trials", trials, "Number of samples")->capture_default_str();
  orc->add_option("--dt", dt, "Euler step, at most 1e-3 t")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Context c = make_context(g);
    if (*simulate) return run_simulate(c, m, walks, width, steps);
    if (*dist) return run_distance(c, m, u_text, v_text, max_dist, frontier);
    if (*jour) return run_journey(c, m, itf, false);
    if (*bund) return run_journey(c, m, itf, true);
    if (*bound) return run_boundary(c, m, source, side, b_horizon);
    if (*verify) return run_verify(c, plan_names, pairs);
    if (*conv) return run_converge(c, conv_plan, n_ref);
    if (*orc) return run_oracle(c, t, o_side, trials, dt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MarginViolation& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
