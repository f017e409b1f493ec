#include <doctest.h>

#include <Eigen/LU>

#include <cmath>

#include "almfast/reference.hpp"
#include "almfast/smoothing.hpp"
#include "support.hpp"

using namespace almfast;
using testing::Sampler;

namespace {

Vector scalar(double a) { return Vector::Constant(1, a); }

}  // namespace

TEST_CASE("toy KKT solution") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);
  CHECK(ref.u_star[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ref.u_star[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ref.x_star[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ref.f_star == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ref.kkt_residual <= 1e-8);
  CHECK(toy.residual(ref.u_star).norm() <= 1e-10);
}

TEST_CASE("an interior optimum carries a zero multiplier") {
  // Constraint built to pass through the unconstrained minimum.
  Matrix Q(2, 2);
  Q << 2.0, 0.0, 0.0, 1.0;
  Vector c(2);
  c << -0.5, 0.2;
  const Vector u_min = -Q.inverse() * c;  // (0.25, -0.2), interior
  Matrix G(1, 2);
  G << 1.0, 2.0;
  const Vector g = -(G * u_min);
  const ProblemInstance inst(QuadraticObjective(Q, c), G, g,
                             SimpleSet::box(Vector::Constant(2, -1.0),
                                            Vector::Constant(2, 1.0)));
  const ReferenceSolution ref = solve_kkt_qp(inst);
  CHECK((ref.u_star - u_min).norm() <= 1e-9);
  CHECK(ref.x_star.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("a 5-variable QP agrees with a grid search over the feasible segment") {
  // m = 4 leaves a one-dimensional feasible set inside the box, dense
  // enough to scan at fixed resolution.
  const InstanceFile file = generate_instance(testing::random_box_spec(3, 5, 4));
  const ProblemInstance& inst = file.instance;
  REQUIRE(file.reference.has_value());

  Eigen::FullPivLU<Matrix> lu(inst.constraint_matrix());
  const Matrix null_space = lu.kernel();
  REQUIRE(null_space.cols() == 1);
  const Vector direction = null_space.col(0).normalized();
  // particular solution from the planted feasible construction
  const Vector base = lu.solve(-inst.constraint_offset());
  REQUIRE(inst.residual(base).norm() <= 1e-9);

  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < 5; ++i) {
    if (std::abs(direction[i]) < 1e-14) continue;
    const double a = (inst.set().lower()[i] - base[i]) / direction[i];
    const double b = (inst.set().upper()[i] - base[i]) / direction[i];
    t_lo = std::max(t_lo, std::min(a, b));
    t_hi = std::min(t_hi, std::max(a, b));
  }
  REQUIRE(t_lo <= t_hi);

  double best = std::numeric_limits<double>::infinity();
  for (double t = t_lo; t <= t_hi; t += 0.01) {
    const Vector u = base + t * direction;
    if (inst.set().membership_violation(u) > 1e-12) continue;
    best = std::min(best, inst.objective(u));
  }
  REQUIRE(std::isfinite(best));
  CHECK(best >= file.reference->f_star - 1e-9);
  CHECK(best - file.reference->f_star <= 1e-3);
}

TEST_CASE("dual value at the optimal multiplier equals the optimal value") {
  const ProblemInstance toy = make_toy_instance();
  for (const double rho : {1.0, 2.0, 40.0}) {
    const DualBracket bracket =
        dual_value_bracket(toy, scalar(-0.5), rho, 1e-10);
    CHECK(bracket.width() <= 1e-10);
    CHECK(bracket.value() == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("weak duality holds at sampled multipliers") {
  const ProblemInstance toy = make_toy_instance();
  Sampler sampler(43);
  for (int trial = 0; trial < 25; ++trial) {
    const Vector x = scalar(sampler.uniform(-3.0, 3.0));
    const double rho = sampler.uniform(0.5, 8.0);
    CHECK(dual_value(toy, x, rho, 1e-12) <= 0.25 + 1e-10);
  }
}

TEST_CASE("dual value is concave in the multiplier") {
  const ProblemInstance toy = make_toy_instance();
  Sampler sampler(47);
  const double tol = 1e-10;
  for (int trial = 0; trial < 25; ++trial) {
    const Vector x1 = scalar(sampler.uniform(-3.0, 3.0));
    const Vector x2 = scalar(sampler.uniform(-3.0, 3.0));
    const double rho = sampler.uniform(0.5, 8.0);
    const double mid = dual_value(toy, 0.5 * (x1 + x2), rho, tol);
    const double avg = 0.5 * (dual_value(toy, x1, rho, tol) +
                              dual_value(toy, x2, rho, tol));
    CHECK(mid >= avg - 2.0 * tol);
  }
}

TEST_CASE("oracle value matches a long fixed-penalty solve") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const InstanceFile file =
        generate_instance(testing::random_box_spec(seed, 6, 2));
    SolverConfig cfg;
    cfg.rho = 2.0;
    cfg.epsilon = 1e-6;
    const SolveReport report = run_ifal(file.instance, cfg);
    REQUIRE(report.status == SolveStatus::converged);
    CHECK(std::abs(file.instance.objective(report.u) - file.reference->f_star) <=
          1e-5);
  }
}

TEST_CASE("gap traces need retained iterates") {
  const ProblemInstance toy = make_toy_instance();
  SolverConfig cfg;
  cfg.rho = 2.0;
  cfg.epsilon = 1e-2;
  const SolveReport bare = run_ifal(toy, cfg);
  CHECK_THROWS_AS(gap_trace(toy, bare, 2.0, 1e-12), std::invalid_argument);
}

TEST_CASE("warm-start traces keep the initial gap below delta_0") {
  const ProblemInstance toy = make_toy_instance();
  const ReferenceSolution ref = solve_kkt_qp(toy);
  SolverConfig cfg;
  cfg.rho = 2.0;
  cfg.epsilon = 6e-2;
  cfg.retain_iterates = true;
  const SolveReport report = run_ifal(toy, cfg);
  const std::vector<double> trace = gap_trace(toy, report, cfg.rho, 1e-12);
  REQUIRE(trace.size() == report.records.size() + 1);
  CHECK(trace.front() <= 0.01 + 1e-10);  // delta_0 = eps/6
  // The smoothed gap dominates the objective residual (it can dip below
  // zero at infeasible iterates, but never below the multiplier bound).
  const double x_norm = ref.x_star.norm();
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double residual =
        toy.objective(report.iterates_u[k]) - ref.f_star;
    CHECK(trace[k] >= residual - 1e-10);
    CHECK(trace[k] >=
          -x_norm * toy.residual(report.iterates_u[k]).norm() - 1e-10);
  }
}

TEST_CASE("the oracle rejects what it cannot certify") {
  const ProblemInstance toy = make_toy_instance();
  Matrix G(1, 2);
  G << 1.0, 1.0;
  const ProblemInstance on_ball(
      QuadraticObjective(Matrix::Identity(2, 2), Vector::Zero(2)), G,
      Vector::Constant(1, -1.0), SimpleSet::ball(Vector::Zero(2), 2.0));
  CHECK_THROWS_AS(solve_kkt_qp(on_ball), std::invalid_argument);

  OracleObjective oracle;
  oracle.value = [](const Vector& u) { return 0.5 * u.squaredNorm(); };
  oracle.gradient = [](const Vector& u) { return u; };
  oracle.lipschitz = 1.0;
  const ProblemInstance black_box(
      oracle, G, Vector::Constant(1, -1.0),
      SimpleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0)));
  CHECK_THROWS_AS(solve_kkt_qp(black_box), std::invalid_argument);
}

TEST_CASE("non-box instances fall back to the certified first-order path") {
  Matrix G(1, 2);
  G << 1.0, 1.0;
  const ProblemInstance on_ball(
      QuadraticObjective(Matrix::Identity(2, 2), Vector::Zero(2)), G,
      Vector::Constant(1, -1.0), SimpleSet::ball(Vector::Zero(2), 2.0));
  const DualBracket bracket =
      dual_value_bracket(on_ball, scalar(-0.5), 2.0, 1e-8);
  CHECK(bracket.width() <= 1e-8);
  // same optimum as the toy problem: the ball contains the box solution
  CHECK(bracket.value() == doctest::Approx(0.25).epsilon(1e-6));
}
