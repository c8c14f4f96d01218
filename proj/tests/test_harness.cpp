#include "doctest.h"

#include "fppweb/harness.hpp"

using namespace fppweb;

namespace {

TrialPlan plan_k1(std::uint64_t seeds) {
  return TrialPlan{"simple-k1", {0, seeds}, {1, 4, 16}, presets::simple(), presets::fig5(),
                   Itinerary{Rational(0), Rational(-1, 2), {Rational(0)}, {1}}, Rational(2),
                   std::nullopt, false};
}

}  // namespace

TEST_CASE("plan validation") {
  auto p = plan_k1(0);
  CHECK_THROWS(p.validate());
  p = plan_k1(3);
  p.n_values = {2};
  CHECK_THROWS(p.validate());
  p.allow_nonsquare = true;
  CHECK_NOTHROW(p.validate());
  p = plan_k1(3);
  p.horizon = Rational(0);
  CHECK_THROWS(p.validate());
  CHECK_THROWS(run_exact_suite(plan_k1(0)));
}

TEST_CASE("exact suite on the simple walk") {
  const auto r = run_exact_suite(plan_k1(100));
  CHECK(r.passed());
  CHECK(r.aborted_trials == 0);
  for (const auto& c : r.checks) {
    CAPTURE(c.id);
    CHECK(c.violations == 0);
    CHECK(c.trials == 300);
    CHECK(c.worst_margin >= 0);
  }
}

TEST_CASE("violations carry reproduction coordinates") {
  SuiteReport r;
  CheckResult c;
  c.id = "demo";
  c.violations = 1;
  c.passed = false;
  c.details.push_back({7, 16, "(0,0,[1],[1])", 12, 1.5});
  r.checks.push_back(c);
  CHECK_FALSE(r.passed());
  const auto csvs = r.violation_csvs();
  REQUIRE(csvs.size() == 1);
  CHECK(csvs[0].first == "violations_demo.csv");
  CHECK(csvs[0].second == "seed,n,itinerary,time_index,amount\n7,16,\"(0,0,[1],[1])\",12,1.5\n");
  CHECK(r.to_json().find("\"time_index\": 12") != std::string::npos);
}

TEST_CASE("reports are independent of worker count") {
  const auto plans = default_matrix();
  const std::vector<TrialPlan> some(plans.begin(), plans.begin() + 6);
  const auto a = run_exact_suite(some, {1, 5});
  const auto b = run_exact_suite(some, {4, 5});
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("default matrix shape") {
  const auto m = default_matrix();
  CHECK(m.size() == 30);
  std::int64_t bundles = 0;
  for (const auto& p : m)
    if (p.itinerary.k() > 0) bundles += static_cast<std::int64_t>(p.seeds.count * p.n_values.size());
  CHECK(bundles == 7200);
}

TEST_CASE("modulus suite") {
  const auto r = run_modulus_suite(200, 1);
  CHECK(r.passed());
  CHECK(r.checks.size() == 2);
}

TEST_CASE("distribution suite flags n = 1 as informational") {
  auto p = plan_k1(200);
  p.spec = presets::lazy();
  p.n_values = {1};
  DistributionOptions d;
  d.oracle_trials = 500;
  const auto r = run_distribution_suite(p, d);
  REQUIRE(r.checks.size() == 2);
  for (const auto& c : r.checks) {
    CHECK(c.informational);
    CHECK(c.statistic.has_value());
  }
  CHECK(r.samples.size() == 2);
}

TEST_CASE("convergence study") {
  auto p = plan_k1(20);
  p.spec = presets::lazy();
  p.n_values = {4, 16};
  const auto rows = convergence_study(p, 16);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].journey_endpoint == 0);
  CHECK(rows[1].epigraph == 0);
  CHECK(rows[0].journey_endpoint >= 0);
  CHECK_THROWS(convergence_study(p, 9));
  CHECK(weakly_decreasing_steps({{1, 3, 0}, {4, 2, 0}, {9, 2, 0}}, 2));
  CHECK_FALSE(weakly_decreasing_steps({{1, 3, 0}, {4, 4, 0}, {9, 2, 0}}, 2));
}
