#include "almfast/generator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "almfast/power_iteration.hpp"
#include "almfast/rng.hpp"

namespace almfast {

InstanceFamily family_from_string(const std::string& name) {
  if (name == "random-qp") return InstanceFamily::random_qp;
  if (name == "toy") return InstanceFamily::toy;
  if (name == "netflow-qp") return InstanceFamily::netflow_qp;
  throw std::invalid_argument("unknown instance family: " + name);
}

const char* to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::random_qp: return "random-qp";
    case InstanceFamily::toy: return "toy";
    case InstanceFamily::netflow_qp: return "netflow-qp";
  }
  return "unknown";
}

namespace {

Matrix draw_matrix(Xoshiro256& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = rng.next_normal();
  return m;
}

// Q = (M^T M + sigma I) / lambda_max, with sigma chosen so the condition
// number matches the target; the rescale pins lambda_max(Q) = 1.
Matrix draw_quadratic_term(Xoshiro256& rng, Index n, double conditioning) {
  const Matrix m = draw_matrix(rng, n, n);
  Matrix q = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q, Eigen::EigenvaluesOnly);
  const double lo = std::max(eig.eigenvalues().minCoeff(), 0.0);
  const double hi = eig.eigenvalues().maxCoeff();
  double sigma = (hi - conditioning * lo) / (conditioning - 1.0 + 1e-15);
  sigma = std::max(sigma, 1e-8 * hi);
  q += sigma * Matrix::Identity(n, n);
  q /= hi + sigma;
  // exact symmetry despite the products above
  return 0.5 * (q + q.transpose());
}

SimpleSet make_set(const InstanceSpec& spec) {
  switch (spec.set_kind) {
    case SetKind::box:
      return SimpleSet::box(Vector::Constant(spec.n, -spec.set_scale),
                            Vector::Constant(spec.n, spec.set_scale));
    case SetKind::ball:
      return SimpleSet::ball(Vector::Zero(spec.n), spec.set_scale);
    case SetKind::simplex:
      return SimpleSet::simplex(spec.n, spec.set_scale);
  }
  throw std::logic_error("make_set: unknown set kind");
}

// A point comfortably inside the set, drawn uniformly.
Vector draw_interior_point(Xoshiro256& rng, const SimpleSet& set) {
  const Index n = set.dim();
  switch (set.kind()) {
    case SimpleSet::Kind::box: {
      Vector u(n);
      for (Index i = 0; i < n; ++i) {
        const double width = set.upper()[i] - set.lower()[i];
        u[i] = set.lower()[i] + width * rng.next_uniform(0.25, 0.75);
      }
      return u;
    }
    case SimpleSet::Kind::ball: {
      Vector dir(n);
      for (Index i = 0; i < n; ++i) dir[i] = rng.next_normal();
      const double norm = dir.norm();
      if (norm == 0.0) return set.center();
      return set.center() + dir * (0.5 * set.radius() * rng.next_uniform() / norm);
    }
    case SimpleSet::Kind::simplex: {
      Vector u(n);
      for (Index i = 0; i < n; ++i)
        u[i] = -std::log(std::max(rng.next_uniform(), 0x1.0p-53));
      return u * (set.scale() / u.sum());
    }
  }
  throw std::logic_error("draw_interior_point: unknown set kind");
}

InstanceFile make_random_qp(const InstanceSpec& spec) {
  if (spec.m >= spec.n)
    throw std::invalid_argument("generate_instance: m must be below n");
  if (spec.conditioning < 1.0)
    throw std::invalid_argument("generate_instance: conditioning must be >= 1");
  Xoshiro256 rng(spec.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix q = draw_quadratic_term(rng, spec.n, spec.conditioning);
    Vector c(spec.n);
    for (Index i = 0; i < spec.n; ++i) c[i] = rng.next_uniform(-0.5, 0.5);

    Matrix G = draw_matrix(rng, spec.m, spec.n);
    for (Index r = 0; r < spec.m; ++r) {
      const double norm = G.row(r).norm();
      if (norm > 0.0) G.row(r) /= norm;
    }
    if (spectral_norm(G, 1e-10) < 1e-8) continue;  // degenerate draw

    SimpleSet set = make_set(spec);
    const Vector planted = draw_interior_point(rng, set);
    const Vector g = -(G * planted);

    ProblemInstance inst(QuadraticObjective(std::move(q), std::move(c)),
                         std::move(G), g, std::move(set));
    InstanceFile out{std::move(inst), std::nullopt};
    if (out.instance.set().kind() == SimpleSet::Kind::box)
      out.reference = solve_kkt_qp(out.instance);
    return out;
  }
  throw std::runtime_error("generate_instance: no valid draw after 100 attempts");
}

InstanceFile make_netflow_qp(const InstanceSpec& spec) {
  if (spec.set_kind != SetKind::box)
    throw std::invalid_argument("netflow-qp: flows require a box set");
  if (spec.m < 1 || spec.n < spec.m + 1)
    throw std::invalid_argument("netflow-qp: need n >= m + 1 arcs over m + 1 nodes");
  Xoshiro256 rng(spec.seed);
  const Index nodes = spec.m + 1;

  // Random connected digraph: a spanning tree first, extra arcs after.
  std::vector<std::pair<Index, Index>> arcs;
  for (Index v = 1; v < nodes; ++v) {
    const Index parent = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(v)));
    arcs.emplace_back(parent, v);
  }
  while (static_cast<Index>(arcs.size()) < spec.n) {
    const Index s = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(nodes)));
    Index t = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(nodes)));
    if (s == t) t = (t + 1) % nodes;
    arcs.emplace_back(s, t);
  }

  // Node-arc incidence with the last node's balance row dropped, which
  // keeps G full row rank on a connected graph.
  Matrix G = Matrix::Zero(spec.m, spec.n);
  for (Index a = 0; a < spec.n; ++a) {
    const auto [s, t] = arcs[static_cast<std::size_t>(a)];
    if (s < spec.m) G(s, a) += 1.0;
    if (t < spec.m) G(t, a) -= 1.0;
  }

  Matrix q = Matrix::Zero(spec.n, spec.n);
  for (Index i = 0; i < spec.n; ++i) q(i, i) = rng.next_uniform(0.5, 1.5);
  Vector c(spec.n);
  for (Index i = 0; i < spec.n; ++i) c[i] = rng.next_uniform(-0.25, 0.25);

  SimpleSet set = make_set(spec);
  const Vector planted = draw_interior_point(rng, set);
  const Vector g = -(G * planted);

  ProblemInstance inst(QuadraticObjective(std::move(q), std::move(c)),
                       std::move(G), g, std::move(set));
  InstanceFile out{std::move(inst), std::nullopt};
  out.reference = solve_kkt_qp(out.instance);
  return out;
}

}  // namespace

InstanceFile generate_instance(const InstanceSpec& spec) {
  switch (spec.family) {
    case InstanceFamily::toy: {
      InstanceFile out{make_toy_instance(), std::nullopt};
      out.reference = solve_kkt_qp(out.instance);
      return out;
    }
    case InstanceFamily::random_qp:
      return make_random_qp(spec);
    case InstanceFamily::netflow_qp:
      return make_netflow_qp(spec);
  }
  throw std::logic_error("generate_instance: unknown family");
}

}  // namespace almfast
