#pragma once

#include <Eigen/Core>

namespace almfast {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace almfast
