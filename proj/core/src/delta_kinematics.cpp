#include "amctl/delta_kinematics.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "amctl/error.hpp"

namespace amctl {

namespace {

Vec3 chain_elbow(double q, const DeltaGeometry& geom) {
  return {geom.r_base - geom.r_eff + geom.l_upper * std::cos(q), 0.0,
          -geom.l_upper * std::sin(q)};
}

// Elbow of chain i expressed in the arm frame.
Vec3 elbow_arm_frame(int i, double q, const DeltaGeometry& geom) {
  return geom.chain_rotation(i).transpose() * chain_elbow(q, geom);
}

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace

void DeltaGeometry::validate() const {
  if (!(l_upper > 0.0 && l_lower > 0.0 && r_base > 0.0 && r_eff > 0.0)) {
    fail(ErrorCode::kInvalidParams, "delta geometry: all lengths must be > 0");
  }
  if (!(l_lower > std::abs(r_base - r_eff))) {
    fail(ErrorCode::kInvalidParams,
         "delta geometry: l_lower must exceed |r_base - r_eff|");
  }
  if (!(q_min < q_max)) {
    fail(ErrorCode::kInvalidParams, "delta geometry: q_min must be < q_max");
  }
  if (!p_mount.allFinite() || orthonormality_error(r_mount) > 1e-9 ||
      r_mount.determinant() < 0.0) {
    fail(ErrorCode::kInvalidParams, "delta geometry: invalid mount transform");
  }
  if (!(singular_v_tol > 0.0 && max_cond_m > 1.0)) {
    fail(ErrorCode::kInvalidParams, "delta geometry: invalid singularity guards");
  }
}

Mat3 DeltaGeometry::chain_rotation(int i) const {
  const double c = std::cos(chain_azimuth[i]);
  const double s = std::sin(chain_azimuth[i]);
  Mat3 phi;
  phi << c, s, 0.0,
         -s, c, 0.0,
         0.0, 0.0, 1.0;
  return phi;
}

bool DeltaGeometry::within_limits(const JointVec& q) const {
  return (q.array() >= q_min).all() && (q.array() <= q_max).all();
}

double constraint_residual(const JointVec& q, const Vec3& p,
                           const DeltaGeometry& geom) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 d = geom.chain_rotation(i) * p - chain_elbow(q[i], geom);
    worst = std::max(worst, std::abs(d.norm() - geom.l_lower));
  }
  return worst;
}

Vec3 forward_position(const JointVec& q, const DeltaGeometry& geom) {
  std::array<Vec3, 3> h;
  for (int i = 0; i < 3; ++i) h[i] = elbow_arm_frame(i, q[i], geom);

  // Circumcenter of the three sphere centers, then step along the normal.
  const Vec3 a = h[0] - h[2];
  const Vec3 b = h[1] - h[2];
  const Vec3 axb = a.cross(b);
  const double axb_sq = axb.squaredNorm();
  if (axb_sq < 1e-24) {
    fail(ErrorCode::kNoSolution, "forward_position: elbows are collinear");
  }
  const Vec3 center =
      h[2] + (a.squaredNorm() * b - b.squaredNorm() * a).cross(axb) /
                 (2.0 * axb_sq);
  const double depth_sq =
      geom.l_lower * geom.l_lower - (center - h[2]).squaredNorm();
  if (depth_sq < 0.0) {
    std::ostringstream msg;
    msg << "forward_position: chains cannot close for q = ("
        << q.transpose() << ")";
    fail(ErrorCode::kNoSolution, msg.str());
  }
  const Vec3 normal = axb / std::sqrt(axb_sq);
  const Vec3 up = center + std::sqrt(depth_sq) * normal;
  const Vec3 down = center - std::sqrt(depth_sq) * normal;
  Vec3 p = up.z() < down.z() ? up : down;

  // One Newton polish on the three sphere equations.
  Mat3 jac;
  Vec3 res;
  for (int i = 0; i < 3; ++i) {
    const Vec3 d = p - h[i];
    jac.row(i) = 2.0 * d.transpose();
    res[i] = d.squaredNorm() - geom.l_lower * geom.l_lower;
  }
  const Eigen::PartialPivLU<Mat3> lu(jac);
  if (std::abs(lu.determinant()) > 1e-18) p -= lu.solve(res);
  return p;
}

JointVec inverse_position(const Vec3& p, const DeltaGeometry& geom,
                          bool enforce_limits) {
  JointVec q;
  const double lu = geom.l_upper;
  const double ll = geom.l_lower;
  for (int i = 0; i < 3; ++i) {
    const Vec3 pi = geom.chain_rotation(i) * p;
    const double x = pi.x() - (geom.r_base - geom.r_eff);
    // A cos q + B sin q = C
    const double a = -2.0 * x * lu;
    const double b = 2.0 * pi.z() * lu;
    const double c = ll * ll - lu * lu - x * x - pi.y() * pi.y() - pi.z() * pi.z();
    const double rho = std::hypot(a, b);
    if (rho < 1e-15 || std::abs(c) > rho * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "inverse_position: chain " << i + 1 << " cannot reach ("
          << p.transpose() << ")";
      fail(ErrorCode::kUnreachable, msg.str());
    }
    const double ratio = std::clamp(c / rho, -1.0, 1.0);
    q[i] = wrap_angle(std::atan2(b, a) + std::acos(ratio));
  }
  if (enforce_limits && !geom.within_limits(q)) {
    std::ostringstream msg;
    msg << "inverse_position: (" << p.transpose()
        << ") needs joint angles outside limits: (" << q.transpose() << ")";
    fail(ErrorCode::kUnreachable, msg.str());
  }
  return q;
}

ArmJacobians arm_jacobians(const JointVec& q, const Vec3& p,
                           const DeltaGeometry& geom) {
  const double residual = constraint_residual(q, p, geom);
  if (!(residual < 1e-6)) {
    std::ostringstream msg;
    msg << "arm_jacobians: point inconsistent with joints, residual "
        << residual << " m";
    fail(ErrorCode::kInconsistentInput, msg.str());
  }
  ArmJacobians jac;
  for (int i = 0; i < 3; ++i) {
    const double c = std::cos(q[i]);
    const double s = std::sin(q[i]);
    jac.phi[i] = geom.chain_rotation(i);
    jac.alpha[i] = Vec3(c, 0.0, -s);
    jac.alpha_dot[i] = Vec3(-s, 0.0, -c);
    jac.elbow[i] = chain_elbow(q[i], geom);
    jac.beta[i] = (jac.phi[i] * p - jac.elbow[i]) / geom.l_lower;
    jac.M.row(i) = jac.beta[i].transpose() * jac.phi[i];
    jac.v_diag[i] = jac.beta[i].dot(jac.alpha_dot[i]);
  }
  return jac;
}

Vec3 forward_velocity(const ArmJacobians& jac, const JointVec& q_dot,
                      const DeltaGeometry& geom) {
  const Eigen::JacobiSVD<Mat3> svd(jac.M);
  const Vec3 sv = svd.singularValues();
  if (!(sv[2] > 0.0) || sv[0] / sv[2] >= geom.max_cond_m) {
    fail(ErrorCode::kSingularM, "forward_velocity: M is numerically singular");
  }
  const Vec3 rhs = geom.l_upper * jac.v_diag.cwiseProduct(q_dot);
  return jac.M.partialPivLu().solve(rhs);
}

Vec3 forward_velocity(const JointVec& q, const JointVec& q_dot,
                      const DeltaGeometry& geom) {
  const Vec3 p = forward_position(q, geom);
  return forward_velocity(arm_jacobians(q, p, geom), q_dot, geom);
}

JointVec inverse_velocity(const ArmJacobians& jac, const Vec3& v_desired,
                          const DeltaGeometry& geom) {
  if (jac.min_abs_v() <= geom.singular_v_tol) {
    std::ostringstream msg;
    msg << "inverse_velocity: fold singularity, V = (" << jac.v_diag.transpose()
        << ")";
    fail(ErrorCode::kSingularV, msg.str());
  }
  return (jac.M * v_desired).cwiseQuotient(geom.l_upper * jac.v_diag);
}

JointVec inverse_velocity(const JointVec& q, const Vec3& p,
                          const Vec3& v_desired, const DeltaGeometry& geom) {
  return inverse_velocity(arm_jacobians(q, p, geom), v_desired, geom);
}

Vec3 arm_to_body(const Vec3& p_arm, const DeltaGeometry& geom) {
  return geom.p_mount + geom.r_mount * p_arm;
}

EndEffectorState compose_world(const QuadState& quad, const Vec3& p_arm,
                               const Vec3& v_arm, const DeltaGeometry& geom) {
  const RotMat r_e = quad.R * geom.r_mount;
  const Vec3 omega_w = quad.omega_world();
  const Vec3 mount_w = quad.R * geom.p_mount;
  const Vec3 base_p = quad.p + mount_w;
  const Vec3 base_v = quad.v + omega_w.cross(mount_w);
  const Vec3 arm_w = r_e * p_arm;

  EndEffectorState ee;
  ee.p_arm = p_arm;
  ee.v_arm = v_arm;
  ee.p_world = base_p + arm_w;
  ee.v_world = base_v + omega_w.cross(arm_w) + r_e * v_arm;
  return ee;
}

EndEffectorState world_pose_velocity(const QuadState& quad, const ArmState& arm,
                                     const DeltaGeometry& geom) {
  const Vec3 p_arm = forward_position(arm.q, geom);
  const Vec3 v_arm =
      forward_velocity(arm_jacobians(arm.q, p_arm, geom), arm.q_dot, geom);
  return compose_world(quad, p_arm, v_arm, geom);
}

ArmTarget world_to_arm_target(const QuadState& quad, const Vec3& p_world,
                              const Vec3& v_world, const DeltaGeometry& geom) {
  const RotMat r_e = quad.R * geom.r_mount;
  const Vec3 omega_w = quad.omega_world();
  const Vec3 mount_w = quad.R * geom.p_mount;
  const Vec3 rel = p_world - (quad.p + mount_w);
  const Vec3 base_v = quad.v + omega_w.cross(mount_w);
  return {r_e.transpose() * rel,
          r_e.transpose() * (v_world - base_v - omega_w.cross(rel))};
}

}  // namespace amctl
