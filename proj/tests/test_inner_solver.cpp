#include <doctest.h>

#include "almfast/inner_solver.hpp"
#include "almfast/reference.hpp"
#include "almfast/smoothing.hpp"
#include "support.hpp"

using namespace almfast;
using testing::Sampler;

namespace {

Vector scalar(double a) { return Vector::Constant(1, a); }

}  // namespace

TEST_CASE("inner budget formula") {
  CHECK(inner_budget(2.0 * std::sqrt(2.0), 5.0, 0.01) == 127);
  CHECK(inner_budget(1.0, 1.0, 4.0) == 1);
  CHECK(inner_budget(1.0, 4.0, 1.0) == 4);
  CHECK_THROWS_AS(inner_budget(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(inner_budget(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("certified solve reaches the toy subproblem optimum") {
  const ProblemInstance toy = make_toy_instance();
  const InnerResult res =
      solve_inner(toy, scalar(-0.5), 2.0, 1e-6, BudgetMode::certified);
  REQUIRE(res.certified_gap.has_value());
  CHECK(*res.certified_gap <= 1e-6);
  CHECK(res.u_tilde[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(res.u_tilde[1] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("an optimal warm start exits immediately") {
  const ProblemInstance toy = make_toy_instance();
  Vector warm(2);
  warm << 0.5, 0.5;
  const InnerResult res = solve_inner(toy, scalar(-0.5), 2.0, 1e-8,
                                      BudgetMode::certified, warm);
  CHECK(res.iterations <= 1);
  CHECK(*res.certified_gap <= 1e-8);
}

TEST_CASE("apriori mode runs the full budget and counts one projection per iteration") {
  const ProblemInstance toy = make_toy_instance();
  const InnerResult res =
      solve_inner(toy, scalar(-0.5), 2.0, 0.01, BudgetMode::apriori);
  CHECK(res.projections == 127);
  CHECK(res.iterations == 127);
  CHECK_FALSE(res.certified_gap.has_value());
}

TEST_CASE("certified never exceeds the apriori projection count") {
  Sampler sampler(31);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const InstanceFile file =
        generate_instance(testing::random_box_spec(seed, 6, 2));
    const Vector x = sampler.gaussian(2);
    const double rho = sampler.uniform(0.5, 4.0);
    const double delta = sampler.uniform(1e-4, 1e-2);
    const InnerResult apriori =
        solve_inner(file.instance, x, rho, delta, BudgetMode::apriori);
    const InnerResult certified =
        solve_inner(file.instance, x, rho, delta, BudgetMode::certified);
    CHECK(certified.projections <= apriori.projections);
    CHECK(apriori.projections == apriori.iterations);
    CHECK(certified.projections == certified.iterations);
  }
}

TEST_CASE("both modes satisfy the inexactness condition against the oracle") {
  Sampler sampler(37);
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 50; ++seed) {
    const InstanceFile file =
        generate_instance(testing::random_box_spec(seed, 5, 2));
    for (int rep = 0; rep < 5 && checked < 50; ++rep, ++checked) {
      const Vector x = sampler.gaussian(2);
      const double rho = sampler.uniform(0.5, 4.0);
      const double delta = sampler.uniform(1e-4, 1e-2);
      const DualBracket d = dual_value_bracket(file.instance, x, rho, 1e-12);
      for (const BudgetMode mode :
           {BudgetMode::apriori, BudgetMode::certified}) {
        const InnerResult res = solve_inner(file.instance, x, rho, delta, mode);
        const double value = aug_lagrangian(file.instance, res.u_tilde, x, rho);
        CHECK(value - d.value() <= delta + 1e-8 + d.width());
        CHECK(value - d.value() >= -1e-8 - d.width());
        CHECK(file.instance.set().contains(res.u_tilde, 1e-12));
        if (mode == BudgetMode::certified) CHECK(*res.certified_gap <= delta);
      }
    }
  }
}

TEST_CASE("iterates stay feasible on every set variant") {
  Sampler sampler(41);
  Matrix G(1, 3);
  G << 1.0, -1.0, 0.5;
  const Vector g = scalar(-0.2);
  const Matrix Q = Matrix::Identity(3, 3);
  const SimpleSet sets[] = {
      SimpleSet::box(Vector::Constant(3, -1.0), Vector::Constant(3, 1.0)),
      SimpleSet::ball(Vector::Zero(3), 1.5),
      SimpleSet::simplex(3, 1.0),
  };
  for (const SimpleSet& set : sets) {
    const ProblemInstance inst(QuadraticObjective(Q, Vector::Zero(3)), G, g, set);
    const InnerResult res = solve_inner(inst, scalar(0.3), 1.0, 1e-6,
                                        BudgetMode::certified);
    CHECK(inst.set().contains(res.u_tilde, 1e-12));
    CHECK(*res.certified_gap <= 1e-6);
  }
}

TEST_CASE("warm starts outside the set are rejected") {
  const ProblemInstance toy = make_toy_instance();
  Vector outside(2);
  outside << 2.0, 0.0;
  CHECK_THROWS_AS(solve_inner(toy, scalar(0.0), 1.0, 1e-4,
                              BudgetMode::certified, outside),
                  std::invalid_argument);
}

TEST_CASE("certified mode reports budget exhaustion with its best iterate") {
  const ProblemInstance toy = make_toy_instance();
  try {
    solve_inner(toy, scalar(0.0), 2.0, 1e-16, BudgetMode::certified,
                std::nullopt, 50);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& failure) {
    CHECK(failure.best_gap() > 0.0);
    CHECK(failure.best_iterate().size() == 2);
    CHECK(failure.iterations() <= 50);
  }
}
