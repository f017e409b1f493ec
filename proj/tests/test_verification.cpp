#include <doctest.h>

#include <cmath>

#include "almfast/verification.hpp"
#include "support.hpp"

using namespace almfast;
using testing::Sampler;

namespace {

Vector scalar(double a) { return Vector::Constant(1, a); }

SolveReport toy_run(double rho, double epsilon,
                    BudgetMode mode = BudgetMode::certified) {
  SolverConfig cfg;
  cfg.rho = rho;
  cfg.epsilon = epsilon;
  cfg.budget_mode = mode;
  cfg.retain_iterates = true;
  return run_ifal(make_toy_instance(), cfg);
}

}  // namespace

TEST_CASE("bound constants reproduce hand arithmetic on the toy instance") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);
  const double rho = 2.0;
  const double epsilon = 1e-2;
  const BoundConstants constants =
      compute_bound_constants(toy, ref, rho, epsilon);

  const double term1 = std::sqrt(epsilon / 3.0);
  const double term2 = std::sqrt(32.0 / rho);  // = 4
  const double term3 = std::sqrt(8.0 * 0.5 / rho +
                                 2.0 * std::sqrt(4.0 * epsilon / (3.0 * rho)));
  CHECK(constants.gamma == doctest::Approx(std::max({term1, term2, term3})));
  CHECK(constants.gamma == doctest::Approx(4.0));
  CHECK(constants.gamma_tilde == constants.gamma);

  const double budget = 16.0 * 4.0 * toy.diameter() *
                        std::sqrt(2.0 * (1.0 + rho * 2.0)) /
                        std::pow(epsilon, 1.25);
  CHECK(constants.theorem2_budget == static_cast<long>(std::floor(budget)));
  CHECK(constants.theorem3_rho == doctest::Approx(16.0 * 0.25 / epsilon));
}

TEST_CASE("inexact oracle inequalities at x = y and random pairs") {
  const ProblemInstance toy = make_toy_instance();
  Sampler sampler(53);
  const double delta = 1e-3;

  // collapsing the linear term at x = y leaves 0 <= L - d <= delta
  const CheckResult collapsed = check_inexact_oracle(
      toy, 2.0, delta, scalar(0.7), scalar(0.7), 1e-8);
  CHECK(collapsed.passed);

  for (const double rho : {1.0, 2.0, 40.0}) {
    for (int pair = 0; pair < 50; ++pair) {
      const Vector x = scalar(sampler.uniform(-2.0, 2.0));
      const Vector y = scalar(sampler.uniform(-2.0, 2.0));
      const CheckResult result =
          check_inexact_oracle(toy, rho, delta, x, y, 1e-8);
      CHECK(result.passed);
    }
  }
}

TEST_CASE("near-exact inner solves collapse the oracle to its exact form") {
  const ProblemInstance toy = make_toy_instance();
  Sampler sampler(59);
  for (int pair = 0; pair < 10; ++pair) {
    const Vector x = scalar(sampler.uniform(-1.0, 1.0));
    const Vector y = scalar(sampler.uniform(-1.0, 1.0));
    const CheckResult result =
        check_inexact_oracle(toy, 2.0, 1e-12, x, y, 1e-8);
    CHECK(result.passed);
  }
}

TEST_CASE("excessive gap recursion on a warm toy trace") {
  const SolveReport report = toy_run(2.0, 6e-2);
  const std::vector<double> trace =
      gap_trace(make_toy_instance(), report, 2.0, 1e-12);
  const CheckResult result = check_excessive_gap(trace, 6e-2, 1e-8);
  CHECK(result.passed);
}

TEST_CASE("excessive gap recursion from a cold start with a large initial gap") {
  const ProblemInstance toy = make_toy_instance();
  SolverConfig cfg;
  cfg.rho = 2.0;
  cfg.epsilon = 6e-2;
  cfg.retain_iterates = true;
  Vector u0(2);
  u0 << -1.0, -1.0;
  cfg.cold_start = ColdStart{u0, scalar(3.0)};
  const SolveReport report = run_ifal(toy, cfg);
  REQUIRE(report.records.size() >= 2);

  const std::vector<double> trace = gap_trace(toy, report, cfg.rho, 1e-12);
  CHECK(trace.front() > delta(0, cfg.epsilon));  // genuinely cold
  const CheckResult result = check_excessive_gap(trace, cfg.epsilon, 1e-8);
  CHECK(result.passed);
}

TEST_CASE("outer decay estimates on warm and cold toy runs") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);

  const SolveReport warm = toy_run(2.0, 1e-2);
  CHECK(check_outer_bounds(toy, warm, ref, 2.0, 1e-2, 1e-8).passed);

  SolverConfig cfg;
  cfg.rho = 2.0;
  cfg.epsilon = 6e-2;
  cfg.retain_iterates = true;
  Vector u0(2);
  u0 << -1.0, -1.0;
  cfg.cold_start = ColdStart{u0, scalar(2.0)};
  const SolveReport cold = run_ifal(toy, cfg);
  CHECK(check_outer_bounds(toy, cold, ref, cfg.rho, cfg.epsilon, 1e-8).passed);
}

TEST_CASE("projection budgets on the toy instance") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);

  const SolveReport apriori = toy_run(2.0, 1e-2, BudgetMode::apriori);
  const BoundConstants fixed_constants =
      compute_bound_constants(toy, ref, 2.0, 1e-2);
  const CheckResult fixed = check_projection_budget(
      apriori, fixed_constants, toy, BudgetTheorem::fixed_penalty);
  CHECK(fixed.passed);

  const SolveReport one_shot = toy_run(40.0, 0.1);
  const BoundConstants at40 = compute_bound_constants(toy, ref, 40.0, 0.1);
  const CheckResult single = check_projection_budget(
      one_shot, at40, toy, BudgetTheorem::single_iteration);
  CHECK(single.passed);
  CHECK(one_shot.outer_iterations == 1);

  const AdaptiveReport adaptive = run_aifal(toy, 1.0, 0.1);
  const BoundConstants at_eps01 = compute_bound_constants(toy, ref, 1.0, 0.1);
  const CheckResult stage_check =
      check_projection_budget(adaptive, at_eps01, toy, ref);
  CHECK(stage_check.passed);
}

TEST_CASE("certified runs never use more projections than apriori runs") {
  const SolveReport certified = toy_run(2.0, 1e-2, BudgetMode::certified);
  const SolveReport apriori = toy_run(2.0, 1e-2, BudgetMode::apriori);
  CHECK(certified.total_projections <= apriori.total_projections);
}

TEST_CASE("checks are deterministic") {
  const ProblemInstance toy = make_toy_instance();
  const SolveReport report = toy_run(2.0, 1e-2);
  const std::vector<double> trace_a = gap_trace(toy, report, 2.0, 1e-12);
  const std::vector<double> trace_b = gap_trace(toy, report, 2.0, 1e-12);
  CHECK(trace_a == trace_b);
  const CheckResult a = check_excessive_gap(trace_a, 1e-2, 1e-8);
  const CheckResult b = check_excessive_gap(trace_b, 1e-2, 1e-8);
  CHECK(a.worst_violation == b.worst_violation);
  CHECK(a.details == b.details);
}

TEST_CASE("optimality check against the reference") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);
  const SolveReport report = toy_run(2.0, 1e-2);
  CHECK(check_optimality(toy, report.u, 1e-2, ref).passed);
  Vector off(2);
  off << -1.0, -1.0;
  CHECK_FALSE(check_optimality(toy, off, 1e-2, ref).passed);
}

TEST_CASE("check results serialize to JSON") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);
  const SolveReport report = toy_run(2.0, 1e-2);
  std::vector<CheckResult> checks;
  checks.push_back(check_optimality(toy, report.u, 1e-2, ref));
  const std::string json = checks_to_json(checks);
  CHECK(json.find("\"all_passed\": true") != std::string::npos);
  CHECK(json.find("epsilon-optimality") != std::string::npos);
}
