#pragma once

#include <cstdint>
#include <string>

#include "almfast/instance_io.hpp"
#include "almfast/problem.hpp"

namespace almfast {

enum class InstanceFamily { random_qp, toy, netflow_qp };

InstanceFamily family_from_string(const std::string& name);
const char* to_string(InstanceFamily family);

enum class SetKind { box, ball, simplex };

/// Recipe for a generated instance. Everything is deterministic in the
/// seed; the PRNG (splitmix64-seeded xoshiro256**) and the draw order are
/// documented in the README so other implementations can reproduce the
/// exact bytes.
struct InstanceSpec {
  InstanceFamily family = InstanceFamily::random_qp;
  Index n = 10;
  Index m = 3;
  double conditioning = 10.0;  ///< target spectral condition number of Q, >= 1
  SetKind set_kind = SetKind::box;
  double set_scale = 1.0;  ///< box half-width / ball radius / simplex scale
  std::uint64_t seed = 0;
};

/// Generates an instance with a planted interior feasible point; box
/// quadratics ship with their KKT reference solution embedded. Throws
/// after 100 failed attempts (rank-deficient draws).
InstanceFile generate_instance(const InstanceSpec& spec);

}  // namespace almfast
