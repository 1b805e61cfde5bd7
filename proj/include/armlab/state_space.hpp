#pragma once

#include <utility>

#include <Eigen/Core>
#include <Eigen/LU>

#include "armlab/arm_dynamics.hpp"
#include "armlab/types.hpp"

// Control-affine per-joint form of the arm dynamics,
//
//   ddtheta_i = f_i(x) + g_i(x) u_i,
//
// over the interleaved state x = [th1, dth1, th2, dth2, th3, dth3]. f is the
// unforced acceleration and g_i is the i-th diagonal entry of M^{-1}; the
// off-diagonal input coupling is left to the switching term of the
// controller as a matched disturbance.

namespace armlab {

template <typename Scalar>
Vec6<Scalar> pack_state(const Vec3<Scalar>& theta, const Vec3<Scalar>& dtheta) {
  Vec6<Scalar> x;
  x << theta[0], dtheta[0], theta[1], dtheta[1], theta[2], dtheta[2];
  return x;
}

template <typename Scalar>
std::pair<Vec3<Scalar>, Vec3<Scalar>> unpack_state(const Vec6<Scalar>& x) {
  return {Vec3<Scalar>{x[0], x[2], x[4]}, Vec3<Scalar>{x[1], x[3], x[5]}};
}

template <typename Scalar>
struct AffineTerms {
  Vec3<Scalar> f;  // drift acceleration [rad/s^2]
  Vec3<Scalar> g;  // input gains diag(M^{-1}) [rad/s^2 per N m], > 0
};

template <typename DerivedQ, typename DerivedV>
AffineTerms<typename DerivedQ::Scalar> affine_terms(const Eigen::MatrixBase<DerivedQ>& theta,
                                                    const Eigen::MatrixBase<DerivedV>& dtheta,
                                                    const ArmParams<typename DerivedQ::Scalar>& params) {
  using Scalar = typename DerivedQ::Scalar;
  AffineTerms<Scalar> out;
  // Same code path as the plant: f is the zero-torque forward dynamics.
  out.f = forward_dynamics(theta, dtheta, Vec3<Scalar>::Zero(), params);
  out.g = mass_matrix(theta, params).inverse().diagonal();
  return out;
}

template <typename Scalar>
AffineTerms<Scalar> affine_terms(const Vec6<Scalar>& x, const ArmParams<Scalar>& params) {
  const auto [theta, dtheta] = unpack_state(x);
  return affine_terms(theta, dtheta, params);
}

}  // namespace armlab
