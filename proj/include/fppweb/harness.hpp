#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fppweb/fpp.hpp"
#include "fppweb/increment.hpp"
#include "fppweb/journeys.hpp"

namespace fppweb {

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t count = 0;
};

struct TrialPlan {
  std::string name;
  SeedRange seeds;
  std::vector<std::int64_t> n_values;
  IncrementSpec spec;
  JumpSet jumps;
  Itinerary itinerary;
  Rational horizon;
  /// Lattice window used for every n; auto-sized per n when absent.
  std::optional<Window> window;
  bool allow_nonsquare = false;

  /// Throws std::invalid_argument on an empty seed range, a bad itinerary,
  /// horizon before the last jump, or non-square n without allow_nonsquare.
  void validate() const;
  Window window_for(std::int64_t n) const;
};

struct Violation {
  std::uint64_t seed = 0;
  std::int64_t n = 1;
  std::string itinerary;
  std::int64_t time_index = 0;
  double amount = 0.0;
};

struct CheckResult {
  std::string id;
  bool exact = true;
  bool informational = false;
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  /// Smallest slack seen (>= 0 when no violations).
  double worst_margin = 0.0;
  std::optional<double> statistic;
  std::optional<double> tolerance;
  bool passed = true;
  std::vector<Violation> details;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  /// (file name, CSV text) attachments.
  std::vector<std::pair<std::string, std::string>> samples;
  std::int64_t aborted_trials = 0;
  std::vector<std::string> notes;

  bool passed() const;
  /// Adds counts of same-id checks together, appends the rest.
  void merge(const SuiteReport& other);
  std::string to_json() const;
  /// One CSV per check with violation coordinates.
  std::vector<std::pair<std::string, std::string>> violation_csvs() const;
};

struct RunOptions {
  int workers = 1;
  std::uint64_t base_seed = 0;
};

/// Seed of the increment field for plan seed s.
std::uint64_t field_seed(std::uint64_t base_seed, std::uint64_t s);

/// Exact per-realization invariants: S-increment domination, R vs G ordering,
/// increment disjointness, push monotonicity, the error-process bound and the
/// modulus bound for the reflection.
SuiteReport run_exact_suite(const TrialPlan& plan, const RunOptions& opts = {});
SuiteReport run_exact_suite(std::span<const TrialPlan> plans, const RunOptions& opts = {});

/// Modulus bound for reflections of random common-start piecewise-linear pairs.
SuiteReport run_modulus_suite(std::int64_t pairs, std::uint64_t seed);

/// 3 increment specs x 2 jump sets x n in {1, 4, 16} x 100 seeds x itineraries
/// of length 0..3.
std::vector<TrialPlan> default_matrix();

struct DistributionOptions {
  std::int64_t oracle_trials = 5000;
  double tolerance = 0.05;
  double oracle_dt = 1e-3;
  /// Side of the boundary curve compared in the boundary-law check.
  Side boundary_side = Side::right;
  /// Compare against the opposite oracle side (mismatch control).
  bool flip_oracle_side = false;
  bool boundary_check = true;
  bool reflection_check = true;
};

/// Law checks against the reflected-BM oracle via two-sample KS. Increments are
/// normalized by sqrt(n * variance).
SuiteReport run_distribution_suite(const TrialPlan& plan, const DistributionOptions& dopts,
                                   const RunOptions& opts = {});

struct ConvergenceRow {
  std::int64_t n;
  /// Median over rank-coupled seeds of |G^n(h) - G^ref(h)| (variance-normalized).
  double journey_endpoint;
  /// Median over seeds of d_* between sampled D^n and D^ref on a shared key grid.
  double epigraph;
};

std::vector<ConvergenceRow> convergence_study(const TrialPlan& plan, std::int64_t n_ref,
                                              const RunOptions& opts = {});

/// True when the statistic weakly decreases in at least `needed` consecutive steps.
bool weakly_decreasing_steps(const std::vector<ConvergenceRow>& rows, int needed);

}  // namespace fppweb
