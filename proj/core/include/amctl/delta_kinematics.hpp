#pragma once

// Kinematics of the 3-DoF delta arm hanging under the airframe.
//
// Chain i lies along azimuth theta_i of the arm frame. In the chain frame
// (x_i pointing along the chain, z shared with the arm frame) the shoulder
// sits at (R_base - r_eff, 0, 0) once the end-effector offset is folded in,
// and the elbow is
//
//   e_i = (R_base - r_eff, 0, 0) + L_upper * alpha_i,
//   alpha_i = (cos q_i, 0, -sin q_i),
//
// so positive q_i swings the upper arm downward. The end-effector center p
// satisfies ||phi_i p - e_i|| = L_lower for every chain, with phi_i the
// rotation taking arm-frame coordinates into chain i's frame. Differentiating
// gives M * p_dot = L_upper * V * q_dot with rows M_i = beta_i^T phi_i and
// V_ii = beta_i^T d(alpha_i)/dq_i, beta_i = (phi_i p - e_i) / L_lower.

#include <array>

#include "amctl/core.hpp"
#include "amctl/quad_state.hpp"

namespace amctl {

using JointVec = Eigen::Vector3d;

struct DeltaGeometry {
  double l_upper = 0.09;
  double l_lower = 0.18;
  double r_base = 0.06;
  double r_eff = 0.025;
  /// Arm-frame origin in the body frame.
  Vec3 p_mount{0.0, 0.0, -0.05};
  /// Arm frame orientation in the body frame.
  RotMat r_mount = RotMat::Identity();
  double q_min = -0.5;
  double q_max = 1.9;
  /// Chain azimuths in the arm frame, rad.
  std::array<double, 3> chain_azimuth{0.0, 2.0943951023931957,
                                      4.1887902047863905};
  /// |V_ii| at or below this is a fold singularity.
  double singular_v_tol = 1e-6;
  /// cond(M) at or above this is treated as singular.
  double max_cond_m = 1e6;

  /// Throws Error(kInvalidParams) when an invariant is violated.
  void validate() const;

  Mat3 chain_rotation(int i) const;  // phi_i
  bool within_limits(const JointVec& q) const;
};

struct ArmState {
  JointVec q = JointVec::Zero();
  JointVec q_dot = JointVec::Zero();
};

struct ArmJacobians {
  Mat3 M = Mat3::Zero();
  /// Diagonal of V.
  Vec3 v_diag = Vec3::Zero();
  std::array<Vec3, 3> alpha;
  std::array<Vec3, 3> alpha_dot;
  std::array<Vec3, 3> beta;
  std::array<Vec3, 3> elbow;  // e_i, chain frame
  std::array<Mat3, 3> phi;

  Mat3 V() const { return v_diag.asDiagonal(); }
  double min_abs_v() const { return v_diag.cwiseAbs().minCoeff(); }
};

struct EndEffectorState {
  Vec3 p_arm = Vec3::Zero();
  Vec3 v_arm = Vec3::Zero();
  Vec3 p_world = Vec3::Zero();
  Vec3 v_world = Vec3::Zero();
};

/// Max over chains of | ||phi_i p - e_i(q_i)|| - L_lower |, in meters.
double constraint_residual(const JointVec& q, const Vec3& p,
                           const DeltaGeometry& geom);

/// Sphere intersection, lower branch. Throws kNoSolution.
Vec3 forward_position(const JointVec& q, const DeltaGeometry& geom);

/// Per-chain closed form. Throws kUnreachable when a chain has no real
/// solution or, with enforce_limits, when a solution leaves the joint limits.
JointVec inverse_position(const Vec3& p, const DeltaGeometry& geom,
                          bool enforce_limits = true);

/// Throws kInconsistentInput if p does not close the chains for q.
ArmJacobians arm_jacobians(const JointVec& q, const Vec3& p,
                           const DeltaGeometry& geom);

/// Solves M p_dot = L_upper V q_dot. Throws kSingularM.
Vec3 forward_velocity(const ArmJacobians& jac, const JointVec& q_dot,
                      const DeltaGeometry& geom);
Vec3 forward_velocity(const JointVec& q, const JointVec& q_dot,
                      const DeltaGeometry& geom);

/// q_dot = V^-1 M v / L_upper. Throws kSingularV.
JointVec inverse_velocity(const ArmJacobians& jac, const Vec3& v_desired,
                          const DeltaGeometry& geom);
JointVec inverse_velocity(const JointVec& q, const Vec3& p,
                          const Vec3& v_desired, const DeltaGeometry& geom);

/// End-effector point in the body frame (lever arm from the body origin).
Vec3 arm_to_body(const Vec3& p_arm, const DeltaGeometry& geom);

/// World-frame position/velocity from an arm-frame point and velocity.
EndEffectorState compose_world(const QuadState& quad, const Vec3& p_arm,
                               const Vec3& v_arm, const DeltaGeometry& geom);

EndEffectorState world_pose_velocity(const QuadState& quad, const ArmState& arm,
                                     const DeltaGeometry& geom);

/// Arm-frame target and velocity that place the end-effector at a world
/// point moving with v_world, given the current vehicle state.
struct ArmTarget {
  Vec3 p_arm;
  Vec3 v_arm;
};
ArmTarget world_to_arm_target(const QuadState& quad, const Vec3& p_world,
                              const Vec3& v_world, const DeltaGeometry& geom);

}  // namespace amctl
