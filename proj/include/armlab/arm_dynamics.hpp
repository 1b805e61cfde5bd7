#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "armlab/types.hpp"

// Planar 3R arm model. Each link i is a point mass m_i at its distal end.
// theta1 is measured counterclockwise from the +x axis, theta2 and theta3
// are relative to the previous link, and gravity acts along -y. The joint
// torque balance is
//
//   M(theta) ddtheta + B(theta)[dth_i dth_j] + D(theta)[dth_i^2] + G(theta) = tau
//
// with the velocity cross products ordered (12, 13, 23).

namespace armlab {

template <typename Scalar>
struct ArmParams {
  Scalar m1, m2, m3;  // link masses [kg], > 0
  Scalar l1, l2, l3;  // link lengths [m], > 0
  Scalar g;           // gravitational acceleration [m/s^2], >= 0
};

using ArmParamsd = ArmParams<double>;

inline ArmParamsd default_arm_params() { return {1.0, 1.0, 1.0, 0.5, 1.0, 1.0, 9.81}; }

template <typename Scalar>
void validate(const ArmParams<Scalar>& p) {
  if (!(p.m1 > Scalar(0) && p.m2 > Scalar(0) && p.m3 > Scalar(0)))
    throw std::invalid_argument("ArmParams: masses must be strictly positive");
  if (!(p.l1 > Scalar(0) && p.l2 > Scalar(0) && p.l3 > Scalar(0)))
    throw std::invalid_argument("ArmParams: lengths must be strictly positive");
  if (!(p.g >= Scalar(0)))
    throw std::invalid_argument("ArmParams: g must be non-negative");
}

struct SingularMassMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Inertia/gravity coefficients of the point-mass model. All configuration
// dependence enters through theta2, theta3 only.
template <typename Scalar>
struct ArmCoefficients {
  Scalar a1, a2, a3;     // absolute-angle diagonal inertias [kg m^2]
  Scalar b12, b13, b23;  // link-pair coupling inertias [kg m^2]
  Scalar w1, w2, w3;     // first moments m*l [kg m]
  Scalar c2, s2, c3, s3, c23, s23;

  ArmCoefficients(const Vec3<Scalar>& theta, const ArmParams<Scalar>& p) {
    const Scalar m123 = p.m1 + p.m2 + p.m3;
    const Scalar m23 = p.m2 + p.m3;
    a1 = m123 * p.l1 * p.l1;
    a2 = m23 * p.l2 * p.l2;
    a3 = p.m3 * p.l3 * p.l3;
    b12 = m23 * p.l1 * p.l2;
    b13 = p.m3 * p.l1 * p.l3;
    b23 = p.m3 * p.l2 * p.l3;
    w1 = m123 * p.l1;
    w2 = m23 * p.l2;
    w3 = p.m3 * p.l3;
    using std::cos;
    using std::sin;
    c2 = cos(theta[1]);
    s2 = sin(theta[1]);
    c3 = cos(theta[2]);
    s3 = sin(theta[2]);
    c23 = cos(theta[1] + theta[2]);
    s23 = sin(theta[1] + theta[2]);
  }
};

}  // namespace detail

// Joint-space inertia matrix. Symmetric positive definite; independent of theta1.
template <typename Derived>
Mat3<typename Derived::Scalar> mass_matrix(const Eigen::MatrixBase<Derived>& theta,
                                           const ArmParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> q = theta.derived();
  const detail::ArmCoefficients<Scalar> k(q, params);

  Mat3<Scalar> m;
  m(0, 0) = k.a1 + k.a2 + k.a3 + Scalar(2) * (k.b12 * k.c2 + k.b23 * k.c3 + k.b13 * k.c23);
  m(0, 1) = k.a2 + k.a3 + k.b12 * k.c2 + Scalar(2) * k.b23 * k.c3 + k.b13 * k.c23;
  m(0, 2) = k.a3 + k.b23 * k.c3 + k.b13 * k.c23;
  m(1, 1) = k.a2 + k.a3 + Scalar(2) * k.b23 * k.c3;
  m(1, 2) = k.a3 + k.b23 * k.c3;
  m(2, 2) = k.a3;
  m(1, 0) = m(0, 1);
  m(2, 0) = m(0, 2);
  m(2, 1) = m(1, 2);
  return m;
}

// Partial derivatives dM/dtheta_k, k = 0..2. dM/dtheta1 vanishes identically.
template <typename Derived>
std::array<Mat3<typename Derived::Scalar>, 3> mass_matrix_partials(
    const Eigen::MatrixBase<Derived>& theta,
    const ArmParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  const Vec3<Scalar> q = theta.derived();
  const detail::ArmCoefficients<Scalar> k(q, params);

  std::array<Mat3<Scalar>, 3> d;
  d[0].setZero();

  Mat3<Scalar>& d2 = d[1];
  d2.setZero();
  d2(0, 0) = Scalar(-2) * (k.b12 * k.s2 + k.b13 * k.s23);
  d2(0, 1) = -(k.b12 * k.s2 + k.b13 * k.s23);
  d2(0, 2) = -k.b13 * k.s23;
  d2(1, 0) = d2(0, 1);
  d2(2, 0) = d2(0, 2);

  Mat3<Scalar>& d3 = d[2];
  d3.setZero();
  d3(0, 0) = Scalar(-2) * (k.b23 * k.s3 + k.b13 * k.s23);
  d3(0, 1) = Scalar(-2) * k.b23 * k.s3 - k.b13 * k.s23;
  d3(0, 2) = -(k.b23 * k.s3 + k.b13 * k.s23);
  d3(1, 1) = Scalar(-2) * k.b23 * k.s3;
  d3(1, 2) = -k.b23 * k.s3;
  d3(1, 0) = d3(0, 1);
  d3(2, 0) = d3(0, 2);
  d3(2, 1) = d3(1, 2);
  return d;
}

template <typename Scalar>
struct VelocityProductTerms {
  Vec3<Scalar> coriolis_cross;   // B(theta) [dth1 dth2, dth1 dth3, dth2 dth3]^T [N m]
  Vec3<Scalar> centrifugal_sq;   // D(theta) [dth1^2, dth2^2, dth3^2]^T [N m]

  Vec3<Scalar> sum() const { return coriolis_cross + centrifugal_sq; }
};

// Velocity-quadratic joint torques, split into cross-product (Coriolis) and
// squared-velocity (centrifugal) parts. The split is assembled from the
// Christoffel symbols of the inertia matrix, so the sum equals the usual
// C(theta, dtheta) dtheta.
template <typename DerivedQ, typename DerivedV>
VelocityProductTerms<typename DerivedQ::Scalar> velocity_product_terms(
    const Eigen::MatrixBase<DerivedQ>& theta, const Eigen::MatrixBase<DerivedV>& dtheta,
    const ArmParams<typename DerivedQ::Scalar>& params) {
  using Scalar = typename DerivedQ::Scalar;
  const Vec3<Scalar> v = dtheta.derived();
  const auto dm = mass_matrix_partials(theta, params);

  const auto christoffel = [&dm](int i, int j, int k) {
    return Scalar(0.5) * (dm[k](i, j) + dm[j](i, k) - dm[i](j, k));
  };

  const Vec3<Scalar> cross{v[0] * v[1], v[0] * v[2], v[1] * v[2]};
  const Vec3<Scalar> squared{v[0] * v[0], v[1] * v[1], v[2] * v[2]};

  VelocityProductTerms<Scalar> out;
  for (int i = 0; i < 3; ++i) {
    // Pair columns ordered (12, 13, 23); symmetry in the last two indices
    // doubles each cross term.
    const Vec3<Scalar> b_row{Scalar(2) * christoffel(i, 0, 1), Scalar(2) * christoffel(i, 0, 2),
                             Scalar(2) * christoffel(i, 1, 2)};
    const Vec3<Scalar> d_row{christoffel(i, 0, 0), christoffel(i, 1, 1), christoffel(i, 2, 2)};
    out.coriolis_cross[i] = b_row.dot(cross);
    out.centrifugal_sq[i] = d_row.dot(squared);
  }
  return out;
}

// Gravitational potential with zero reference at joint height (arm horizontal).
template <typename Derived>
typename Derived::Scalar potential_energy(const Eigen::MatrixBase<Derived>& theta,
                                          const ArmParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  using std::sin;
  const Vec3<Scalar> q = theta.derived();
  const detail::ArmCoefficients<Scalar> k(q, params);
  const Scalar s1 = sin(q[0]);
  const Scalar s12 = sin(q[0] + q[1]);
  const Scalar s123 = sin(q[0] + q[1] + q[2]);
  return params.g * (k.w1 * s1 + k.w2 * s12 + k.w3 * s123);
}

// Gravity torque vector, the gradient of the potential energy.
template <typename Derived>
Vec3<typename Derived::Scalar> gravity_vector(const Eigen::MatrixBase<Derived>& theta,
                                              const ArmParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  using std::cos;
  const Vec3<Scalar> q = theta.derived();
  const detail::ArmCoefficients<Scalar> k(q, params);
  const Scalar c1 = cos(q[0]);
  const Scalar c12 = cos(q[0] + q[1]);
  const Scalar c123 = cos(q[0] + q[1] + q[2]);
  const Scalar t3 = params.g * k.w3 * c123;
  const Scalar t2 = params.g * k.w2 * c12 + t3;
  const Scalar t1 = params.g * k.w1 * c1 + t2;
  return Vec3<Scalar>{t1, t2, t3};
}

// Joint accelerations from the torque balance,
// M ddtheta = tau - B[..] - D[..] - G. Throws SingularMassMatrix if the
// inertia matrix is numerically singular (condition estimate above 1e12),
// which never happens for valid parameters.
template <typename DerivedQ, typename DerivedV, typename DerivedT>
Vec3<typename DerivedQ::Scalar> forward_dynamics(const Eigen::MatrixBase<DerivedQ>& theta,
                                                 const Eigen::MatrixBase<DerivedV>& dtheta,
                                                 const Eigen::MatrixBase<DerivedT>& tau,
                                                 const ArmParams<typename DerivedQ::Scalar>& params) {
  using Scalar = typename DerivedQ::Scalar;
  const Mat3<Scalar> m = mass_matrix(theta, params);
  const auto vel = velocity_product_terms(theta, dtheta, params);
  const Vec3<Scalar> rhs =
      tau.derived() - vel.coriolis_cross - vel.centrifugal_sq - gravity_vector(theta, params);

  Eigen::LDLT<Mat3<Scalar>> ldlt(m);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < Scalar(1e-12))
    throw SingularMassMatrix("mass matrix numerically singular");
  return ldlt.solve(rhs);
}

// Kinetic plus potential energy [J].
template <typename DerivedQ, typename DerivedV>
typename DerivedQ::Scalar total_energy(const Eigen::MatrixBase<DerivedQ>& theta,
                                       const Eigen::MatrixBase<DerivedV>& dtheta,
                                       const ArmParams<typename DerivedQ::Scalar>& params) {
  using Scalar = typename DerivedQ::Scalar;
  const Vec3<Scalar> v = dtheta.derived();
  const Scalar kinetic = Scalar(0.5) * v.dot(mass_matrix(theta, params) * v);
  return kinetic + potential_energy(theta, params);
}

}  // namespace armlab
