#include "almfast/reference.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "almfast/power_iteration.hpp"
#include "almfast/smoothing.hpp"

namespace almfast {

namespace detail {

namespace {

// Coordinate states of a box active set: -1 at lower, +1 at upper, 0 free.
using ActiveState = std::vector<int>;

double lmo_gap(const SimpleSet& box, const Vector& u, const Vector& grad) {
  return std::max(0.0, grad.dot(u - box.linear_minimize(grad)));
}

// Minimize 0.5 u^T H u + b^T u with the coordinates fixed by `state`;
// returns false when the reduced Hessian cannot be factorized reliably.
bool solve_reduced(const Matrix& H, const Vector& b, const SimpleSet& box,
                   const ActiveState& state, Vector* u_out) {
  const Index n = H.rows();
  std::vector<Index> free_idx;
  free_idx.reserve(n);
  Vector u = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (state[i] < 0) u[i] = box.lower()[i];
    else if (state[i] > 0) u[i] = box.upper()[i];
    else free_idx.push_back(i);
  }
  const Index nf = static_cast<Index>(free_idx.size());
  if (nf > 0) {
    Matrix Hff(nf, nf);
    Vector rhs(nf);
    for (Index a = 0; a < nf; ++a) {
      double r = -b[free_idx[a]];
      for (Index j = 0; j < n; ++j)
        if (state[j] != 0) r -= H(free_idx[a], j) * u[j];
      rhs[a] = r;
      for (Index cidx = 0; cidx < nf; ++cidx)
        Hff(a, cidx) = H(free_idx[a], free_idx[cidx]);
    }
    Eigen::LDLT<Matrix> ldlt(Hff);
    if (ldlt.info() != Eigen::Success) return false;
    const Vector uf = ldlt.solve(rhs);
    if (!uf.allFinite()) return false;
    if ((Hff * uf - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) return false;
    for (Index a = 0; a < nf; ++a) u[free_idx[a]] = uf[a];
  }
  *u_out = std::move(u);
  return true;
}

// Primal-dual active-set iteration on the projection fixed point
// u = proj(u - (H u + b)). A fixed point is a KKT point of the box QP.
bool pdas(const Matrix& H, const Vector& b, const SimpleSet& box,
          ActiveState state, Vector* u_out) {
  const Index n = H.rows();
  for (int pass = 0; pass < 100; ++pass) {
    Vector u;
    if (!solve_reduced(H, b, box, state, &u)) return false;
    const Vector grad = H * u + b;
    ActiveState next(n);
    bool settled = true;
    for (Index i = 0; i < n; ++i) {
      const double z = u[i] - grad[i];
      next[i] = z < box.lower()[i] ? -1 : (z > box.upper()[i] ? 1 : 0);
      settled = settled && next[i] == state[i];
    }
    if (settled) {
      *u_out = std::move(u);
      return true;
    }
    state = std::move(next);
  }
  return false;
}

struct FirstOrderResult {
  Vector u;
  double gap = 0.0;
  long iterations = 0;
};

// Accelerated projected gradient on the box QP with a gap certificate.
FirstOrderResult fista_box_qp(const Matrix& H, const Vector& b,
                              const SimpleSet& box, double gap_tol,
                              long cap) {
  const Index n = H.rows();
  const double lipschitz = largest_eigenvalue(H, 1e-10).value;
  if (lipschitz <= 0.0) {
    // Purely linear objective: the linear-minimization point is exact.
    Vector u = box.linear_minimize(b);
    return {std::move(u), 0.0, 0};
  }
  const double step = 1.0 / lipschitz;
  Vector u = box.project(Vector::Zero(n));
  Vector y = u;
  Vector u_prev = u;
  double t = 1.0;
  FirstOrderResult best;
  best.gap = std::numeric_limits<double>::infinity();
  for (long j = 0; j < cap; ++j) {
    const double gap = lmo_gap(box, u, H * u + b);
    if (gap < best.gap) {
      best.u = u;
      best.gap = gap;
      best.iterations = j;
    }
    if (gap <= gap_tol) break;
    u_prev.swap(u);
    u = box.project(y - step * (H * y + b));
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = u + ((t - 1.0) / t_next) * (u - u_prev);
    t = t_next;
  }
  return best;
}

BoxQpResult finish_box_qp(const Matrix& H, const Vector& b,
                          const SimpleSet& box, Vector u) {
  u = box.project(std::move(u));
  BoxQpResult out;
  out.gap = lmo_gap(box, u, H * u + b);
  out.value = 0.5 * u.dot(H * u) + b.dot(u);
  out.u = std::move(u);
  return out;
}

ActiveState classify(const SimpleSet& box, const Vector& u, double band) {
  ActiveState state(u.size(), 0);
  for (Index i = 0; i < u.size(); ++i) {
    const double scale = 1.0 + std::abs(box.lower()[i]) + std::abs(box.upper()[i]);
    if (u[i] - box.lower()[i] <= band * scale) state[i] = -1;
    else if (box.upper()[i] - u[i] <= band * scale) state[i] = 1;
  }
  return state;
}

}  // namespace

BoxQpResult box_qp_min(const Matrix& H, const Vector& b, const SimpleSet& box,
                       double gap_tol) {
  if (H.rows() != H.cols() || H.rows() != b.size() || box.dim() != b.size())
    throw std::invalid_argument("box_qp_min: dimension mismatch");
  if (box.kind() != SimpleSet::Kind::box)
    throw std::invalid_argument("box_qp_min: set must be a box");

  const Index n = H.rows();
  Vector u;
  if (pdas(H, b, box, ActiveState(n, 0), &u)) {
    BoxQpResult out = finish_box_qp(H, b, box, std::move(u));
    if (out.gap <= gap_tol) return out;
  }

  // Seed the active-set iteration from a first-order solve.
  const FirstOrderResult seed = fista_box_qp(H, b, box, gap_tol, 20000);
  if (seed.gap <= gap_tol) {
    BoxQpResult out = finish_box_qp(H, b, box, seed.u);
    if (out.gap <= gap_tol) return out;
  }
  if (pdas(H, b, box, classify(box, seed.u, 1e-7), &u)) {
    BoxQpResult out = finish_box_qp(H, b, box, std::move(u));
    if (out.gap <= gap_tol) return out;
  }

  // Exhaustive active-set enumeration at small dimension.
  if (n <= 12) {
    BoxQpResult best;
    best.gap = std::numeric_limits<double>::infinity();
    ActiveState state(n, 0);
    const long total = static_cast<long>(std::pow(3.0, static_cast<double>(n)));
    for (long code = 0; code < total; ++code) {
      long rest = code;
      for (Index i = 0; i < n; ++i) {
        const int digit = static_cast<int>(rest % 3);
        state[i] = digit == 0 ? 0 : (digit == 1 ? -1 : 1);
        rest /= 3;
      }
      Vector cand;
      if (!solve_reduced(H, b, box, state, &cand)) continue;
      BoxQpResult out = finish_box_qp(H, b, box, std::move(cand));
      if (out.gap < best.gap) best = std::move(out);
      if (best.gap <= gap_tol) return best;
    }
    if (best.gap <= gap_tol) return best;
  }

  const FirstOrderResult last = fista_box_qp(H, b, box, gap_tol, 2000000);
  if (last.gap <= gap_tol)
    return finish_box_qp(H, b, box, last.u);
  throw BudgetExceeded(last.u, last.gap, last.iterations);
}

}  // namespace detail

namespace {

struct KktAttempt {
  bool valid = false;
  bool singular = false;
  Vector u;
  Vector x;
  double feasibility = 0.0;
  double stationarity = 0.0;
};

// Solve the equality-constrained KKT system for one box active set and
// validate bound feasibility and multiplier signs.
KktAttempt try_active_set(const ProblemInstance& inst,
                          const detail::ActiveState& state) {
  const Matrix& Q = inst.quadratic().Q;
  const Vector& c = inst.quadratic().c;
  const Matrix& G = inst.constraint_matrix();
  const Vector& g = inst.constraint_offset();
  const SimpleSet& box = inst.set();
  const Index n = inst.dim();
  const Index m = inst.num_constraints();

  KktAttempt attempt;
  std::vector<Index> free_idx;
  Vector u = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (state[i] < 0) u[i] = box.lower()[i];
    else if (state[i] > 0) u[i] = box.upper()[i];
    else free_idx.push_back(i);
  }
  const Index nf = static_cast<Index>(free_idx.size());

  Vector x;
  if (nf == 0) {
    if ((G * u + g).norm() > 1e-9 * (1.0 + g.norm())) return attempt;
    // Vertex solution: pick the least-squares multiplier.
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(G.transpose());
    x = cod.solve(-(Q * u + c));
  } else {
    Matrix kkt = Matrix::Zero(nf + m, nf + m);
    Vector rhs(nf + m);
    for (Index a = 0; a < nf; ++a) {
      double r = -c[free_idx[a]];
      for (Index j = 0; j < n; ++j)
        if (state[j] != 0) r -= Q(free_idx[a], j) * u[j];
      rhs[a] = r;
      for (Index bidx = 0; bidx < nf; ++bidx)
        kkt(a, bidx) = Q(free_idx[a], free_idx[bidx]);
      for (Index row = 0; row < m; ++row) {
        kkt(a, nf + row) = G(row, free_idx[a]);
        kkt(nf + row, a) = G(row, free_idx[a]);
      }
    }
    for (Index row = 0; row < m; ++row) {
      double r = -g[row];
      for (Index j = 0; j < n; ++j)
        if (state[j] != 0) r -= G(row, j) * u[j];
      rhs[nf + row] = r;
    }
    Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) {
      attempt.singular = true;
      return attempt;
    }
    const Vector sol = lu.solve(rhs);
    if (!sol.allFinite()) {
      attempt.singular = true;
      return attempt;
    }
    for (Index a = 0; a < nf; ++a) u[free_idx[a]] = sol[a];
    x = sol.tail(m);
  }

  // Bound feasibility of the free block.
  for (const Index i : free_idx) {
    const double scale = 1.0 + std::abs(box.lower()[i]) + std::abs(box.upper()[i]);
    if (u[i] < box.lower()[i] - 1e-9 * scale) return attempt;
    if (u[i] > box.upper()[i] + 1e-9 * scale) return attempt;
  }
  u = box.project(u);

  // Multiplier signs: the Lagrangian gradient must point into the box.
  const Vector grad_lag = Q * u + c + G.transpose() * x;
  const double sign_tol = 1e-8 * (1.0 + grad_lag.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    if (state[i] < 0 && grad_lag[i] < -sign_tol) return attempt;
    if (state[i] > 0 && grad_lag[i] > sign_tol) return attempt;
  }

  attempt.feasibility = (G * u + g).norm();
  attempt.stationarity =
      (u - box.project(u - grad_lag)).cwiseAbs().maxCoeff();
  if (attempt.feasibility > 1e-10 * (1.0 + g.norm())) return attempt;
  if (attempt.stationarity > 1e-8) return attempt;
  attempt.valid = true;
  attempt.u = std::move(u);
  attempt.x = std::move(x);
  return attempt;
}

ReferenceSolution finish_reference(const ProblemInstance& inst,
                                   KktAttempt attempt) {
  ReferenceSolution ref;
  ref.f_star = inst.objective(attempt.u);
  ref.kkt_residual = std::max(attempt.feasibility, attempt.stationarity);
  ref.u_star = std::move(attempt.u);
  ref.x_star = std::move(attempt.x);
  return ref;
}

}  // namespace

ReferenceSolution solve_kkt_qp(const ProblemInstance& inst) {
  if (!inst.is_quadratic())
    throw std::invalid_argument("solve_kkt_qp: objective must be quadratic");
  if (inst.set().kind() != SimpleSet::Kind::box)
    throw std::invalid_argument("solve_kkt_qp: set must be a box");
  const Index n = inst.dim();
  if (n > 30)
    throw std::invalid_argument("solve_kkt_qp: desk-scale solver handles n <= 30");

  const Matrix& Q = inst.quadratic().Q;
  const Vector& c = inst.quadratic().c;
  const Matrix& G = inst.constraint_matrix();
  const Vector& g = inst.constraint_offset();
  const SimpleSet& box = inst.set();
  const Index m = inst.num_constraints();

  // Multiplier-method presolve with exact penalized subproblem solves.
  const double norm_g2 = inst.norm_G() * inst.norm_G();
  double rho = 100.0 * (1.0 + inst.lipschitz_f()) / std::max(norm_g2, 1e-12);
  Vector x = Vector::Zero(m);
  Vector u = box.project(Vector::Zero(n));
  double feas = std::numeric_limits<double>::infinity();
  const Matrix gram = G.transpose() * G;
  for (int it = 0; it < 200; ++it) {
    const Matrix H = Q + rho * gram;
    const Vector b = c + G.transpose() * (x + rho * g);
    u = detail::box_qp_min(H, b, box, 1e-9).u;
    const Vector r = G * u + g;
    feas = r.norm();
    if (feas <= 1e-12 * (1.0 + g.norm())) break;
    x += rho * r;
    if ((it + 1) % 8 == 0) rho *= 4.0;
  }
  if (feas > 1e-6 * (1.0 + g.norm()))
    throw InfeasibleInstance("solve_kkt_qp: no feasible point found in the box");

  // Classify coordinates; flip the genuinely ambiguous ones.
  const Vector grad_lag = Q * u + c + G.transpose() * x;
  detail::ActiveState guess(n, 0);
  std::vector<Index> ambiguous;
  for (Index i = 0; i < n; ++i) {
    const double scale = 1.0 + std::abs(box.lower()[i]) + std::abs(box.upper()[i]);
    const double to_lower = u[i] - box.lower()[i];
    const double to_upper = box.upper()[i] - u[i];
    if (to_lower <= 1e-8 * scale) guess[i] = -1;
    else if (to_upper <= 1e-8 * scale) guess[i] = 1;
    if (std::min(to_lower, to_upper) <= 1e-4 * scale &&
        std::abs(grad_lag[i]) <= 1e-4 * (1.0 + grad_lag.cwiseAbs().maxCoeff()))
      ambiguous.push_back(i);
    else if (std::min(to_lower, to_upper) > 1e-8 * scale &&
             std::min(to_lower, to_upper) <= 1e-4 * scale)
      ambiguous.push_back(i);
  }
  if (ambiguous.size() > 16) ambiguous.resize(16);

  bool singular_seen = false;
  const auto attempt_state = [&](const detail::ActiveState& state)
      -> std::optional<ReferenceSolution> {
    KktAttempt attempt = try_active_set(inst, state);
    if (attempt.singular) singular_seen = true;
    if (attempt.valid) return finish_reference(inst, std::move(attempt));
    return std::nullopt;
  };

  for (std::size_t mask = 0; mask < (std::size_t{1} << ambiguous.size()); ++mask) {
    detail::ActiveState state = guess;
    for (std::size_t bit = 0; bit < ambiguous.size(); ++bit) {
      if (mask & (std::size_t{1} << bit)) {
        const Index i = ambiguous[bit];
        if (state[i] != 0) state[i] = 0;  // release
        else {
          // pin to the nearer bound
          const double to_lower = u[i] - box.lower()[i];
          const double to_upper = box.upper()[i] - u[i];
          state[i] = to_lower <= to_upper ? -1 : 1;
        }
      }
    }
    if (auto ref = attempt_state(state)) return *ref;
  }

  // Full enumeration fallback at small dimension.
  if (n <= 12) {
    const long total = static_cast<long>(std::pow(3.0, static_cast<double>(n)));
    detail::ActiveState state(n, 0);
    for (long code = 0; code < total; ++code) {
      long rest = code;
      for (Index i = 0; i < n; ++i) {
        const int digit = static_cast<int>(rest % 3);
        state[i] = digit == 0 ? 0 : (digit == 1 ? -1 : 1);
        rest /= 3;
      }
      if (auto ref = attempt_state(state)) return *ref;
    }
  }

  if (singular_seen)
    throw DegenerateInstance("solve_kkt_qp: every candidate KKT system was singular or invalid");
  throw InfeasibleInstance("solve_kkt_qp: no active set passed the KKT sign checks");
}

DualBracket dual_value_bracket(const ProblemInstance& inst, const Vector& x,
                               double rho, double tol) {
  if (!(rho > 0.0) || !(tol > 0.0))
    throw std::invalid_argument("dual_value: rho and tol must be positive");
  if (x.size() != inst.num_constraints())
    throw std::invalid_argument("dual_value: multiplier dimension mismatch");

  if (inst.is_quadratic() && inst.set().kind() == SimpleSet::Kind::box) {
    const Matrix& Q = inst.quadratic().Q;
    const Vector& c = inst.quadratic().c;
    const Matrix& G = inst.constraint_matrix();
    const Vector& g = inst.constraint_offset();
    const Matrix H = Q + rho * G.transpose() * G;
    const Vector b = c + G.transpose() * (x + rho * g);
    const double constant = x.dot(g) + 0.5 * rho * g.squaredNorm();
    const detail::BoxQpResult qp = detail::box_qp_min(H, b, inst.set(), tol);
    return {qp.value + constant - qp.gap, qp.value + constant};
  }

  const InnerResult res =
      solve_inner(inst, x, rho, tol, BudgetMode::certified, std::nullopt, 4000000);
  const double value = aug_lagrangian(inst, res.u_tilde, x, rho);
  return {value - res.certified_gap.value_or(tol), value};
}

double dual_value(const ProblemInstance& inst, const Vector& x, double rho,
                  double tol) {
  return dual_value_bracket(inst, x, rho, tol).value();
}

std::vector<double> gap_trace(const ProblemInstance& inst,
                              const SolveReport& report, double rho,
                              double tol) {
  if (report.iterates_u.empty() ||
      report.iterates_u.size() != report.iterates_x.size())
    throw std::invalid_argument("gap_trace: report lacks retained iterates");
  const double mu0 = report.config.effective_mu0();
  std::vector<double> trace;
  trace.reserve(report.iterates_u.size());
  for (std::size_t i = 0; i < report.iterates_u.size(); ++i) {
    const double mu_i =
        mu0 * 2.0 / (static_cast<double>(i + 1) * static_cast<double>(i + 2));
    const double primal = smoothed_primal(inst, report.iterates_u[i], mu_i);
    trace.push_back(primal -
                    dual_value(inst, report.iterates_x[i], rho, tol));
  }
  return trace;
}

}  // namespace almfast
