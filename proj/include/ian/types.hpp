#pragma once

#include <Eigen/Dense>

#include <utility>

namespace ian {

using Scalar = double;
using Index = Eigen::Index;

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using IndexPair = std::pair<Index, Index>;

}  // namespace ian
