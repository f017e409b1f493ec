#pragma once

#include <optional>
#include <string>

#include "almfast/problem.hpp"
#include "almfast/reference.hpp"

namespace almfast {

/// A problem instance together with its optional embedded ground truth.
struct InstanceFile {
  ProblemInstance instance;
  std::optional<ReferenceSolution> reference;
};

/// JSON schema: {"n", "m", "objective": {"type": "quadratic", "Q":
/// row-major array, "c"}, "G": row-major array, "g", "set": {"type":
/// "box"|"ball"|"simplex", ...}, "reference"?: {"u_star", "x_star",
/// "f_star", "kkt_residual"}}. All reals are IEEE-754 doubles rendered
/// in shortest round-trip decimal.
std::string instance_to_json(const ProblemInstance& inst,
                             const std::optional<ReferenceSolution>& reference
                             = std::nullopt);

InstanceFile instance_from_json(const std::string& text);

void save_instance(const std::string& path, const ProblemInstance& inst,
                   const std::optional<ReferenceSolution>& reference
                   = std::nullopt);

InstanceFile load_instance(const std::string& path);

}  // namespace almfast
