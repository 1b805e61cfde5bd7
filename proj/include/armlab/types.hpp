#pragma once

#include <Eigen/Core>

namespace armlab {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

template <typename Scalar>
using Vec6 = Eigen::Matrix<Scalar, 6, 1>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;
using Vec6d = Vec6<double>;

}  // namespace armlab
