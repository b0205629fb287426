#include "amctl/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amctl/error.hpp"

namespace amctl {

void Gains::validate() const {
  const auto nonneg = [](const Vec3& v) { return (v.array() >= 0.0).all(); };
  if (!(nonneg(kpp) && nonneg(kvp) && nonneg(kvi) && nonneg(kvd) &&
        nonneg(kp_arm) && nonneg(kd_arm) && nonneg(integral_limit))) {
    throw Error(ErrorCode::kInvalidParams, "control gains must be >= 0");
  }
  if (!(k_att >= 0.0 && d_z >= 0.0 && rate_limit > 0.0 &&
        servo_rate_limit > 0.0 && derivative_cutoff_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidParams,
                "control: k_att, d_z >= 0; limits and cutoffs > 0");
  }
  if (!(jerk_cutoff_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "control: jerk_cutoff_hz must be > 0");
  }
  if (!(thrust_min >= 0.0 && thrust_max > thrust_min)) {
    throw Error(ErrorCode::kInvalidParams, "control: need 0 <= thrust_min < thrust_max");
  }
}

Vec3 outer_loop(OuterLoopState& state, const TrajectorySample& ref,
                const QuadState& quad, const Gains& gains, double dt) {
  const Vec3 v_cmd = ref.v_d + gains.kpp.cwiseProduct(ref.p_d - quad.p);
  const Vec3 error = v_cmd - quad.v;

  if (dt > 0.0) {
    state.v_integral =
        (state.v_integral + error * dt)
            .cwiseMax(-gains.integral_limit)
            .cwiseMin(gains.integral_limit);
    if (state.seeded) {
      const Vec3 raw_rate = (error - state.prev_error) / dt;
      const double tau = 1.0 / (2.0 * std::numbers::pi * gains.derivative_cutoff_hz);
      const double alpha = dt / (dt + tau);
      state.error_rate += alpha * (raw_rate - state.error_rate);
    }
    state.prev_error = error;
    state.seeded = true;
  }

  return gains.kvp.cwiseProduct(error) + gains.kvi.cwiseProduct(state.v_integral) +
         gains.kvd.cwiseProduct(state.error_rate);
}

Vec3 compose_acceleration(const Vec3& a_err, const TrajectorySample& ref,
                          const Vec3& f_low, const Vec3& f_high, double mass) {
  if (!(mass > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "compose_acceleration: mass must be > 0");
  }
  return ref.a_d + a_err - (f_low + f_high) / mass;
}

FlatAttitude flatness_attitude_thrust(const Vec3& a_c, double yaw,
                                      const QuadState& quad, const Gains& gains) {
  const Vec3 thrust_vec = a_c - gravity();
  const double norm = thrust_vec.norm();
  if (!(norm > gains.thrust_epsilon)) {
    throw Error(ErrorCode::kDegenerateThrust,
                "flatness: desired specific thrust vanishes");
  }
  const Vec3 z_b = thrust_vec / norm;
  const Vec3 y_c(-std::sin(yaw), std::cos(yaw), 0.0);
  Vec3 x_b = y_c.cross(z_b);
  const double x_norm = x_b.norm();
  if (x_norm < 1e-6) {
    throw Error(ErrorCode::kGimbalDegenerate,
                "flatness: thrust direction parallel to heading y axis");
  }
  x_b /= x_norm;
  const Vec3 y_b = z_b.cross(x_b);

  FlatAttitude out;
  out.R_des.col(0) = x_b;
  out.R_des.col(1) = y_b;
  out.R_des.col(2) = z_b;

  const Vec3 z_proj = gains.thrust_projection == ThrustProjection::kCurrent
                          ? Vec3(quad.R.col(2))
                          : z_b;
  out.T_spec = z_proj.dot(thrust_vec + gains.d_z * quad.v);
  return out;
}

Vec3 body_rate_command(const RotMat& R, const RotMat& R_des, double yaw_rate_ff,
                       const Gains& gains) {
  return body_rate_command(R, R_des, Vec3(0.0, 0.0, yaw_rate_ff), gains);
}

Vec3 body_rate_command(const RotMat& R, const RotMat& R_des, const Vec3& omega_ff,
                       const Gains& gains) {
  const Mat3 rel = R.transpose() * R_des;
  const Vec3 att_error = vee(0.5 * (rel - rel.transpose()));
  const Vec3 omega = gains.k_att * att_error + rel * omega_ff;
  return omega.cwiseMax(-gains.rate_limit).cwiseMin(gains.rate_limit);
}

Vec3 jerk_body_rates(const Vec3& jerk, const FlatAttitude& flat, double collective) {
  if (!(collective > 0.0)) return Vec3::Zero();
  const Vec3 x_b = flat.R_des.col(0);
  const Vec3 y_b = flat.R_des.col(1);
  const Vec3 z_b = flat.R_des.col(2);
  const Vec3 h = (jerk - z_b.dot(jerk) * z_b) / collective;
  return {-h.dot(y_b), h.dot(x_b), 0.0};
}

ArmCommand arm_velocity_command(const Vec3& p_d, const Vec3& v_d,
                                const ArmState& arm, const DeltaGeometry& geom,
                                const Gains& gains) {
  ArmCommand cmd;
  const Vec3 p = forward_position(arm.q, geom);
  const ArmJacobians jac = arm_jacobians(arm.q, p, geom);
  if (jac.min_abs_v() <= geom.singular_v_tol) {
    cmd.singular = true;
    return cmd;
  }
  Vec3 v = Vec3::Zero();
  try {
    v = forward_velocity(jac, arm.q_dot, geom);
  } catch (const Error&) {
    cmd.singular = true;
    return cmd;
  }
  const Vec3 v_err =
      gains.kp_arm.cwiseProduct(p_d - p) + gains.kd_arm.cwiseProduct(v_d - v);
  cmd.v_c = v_d + v_err;
  cmd.q_dot = inverse_velocity(jac, cmd.v_c, geom);

  const double peak = cmd.q_dot.cwiseAbs().maxCoeff();
  if (peak > gains.servo_rate_limit) {
    cmd.q_dot *= gains.servo_rate_limit / peak;
    cmd.saturated = true;
  }
  return cmd;
}

QuadController::QuadController(const Gains& gains, CompensationMode mode,
                               double compensation_mass)
    : gains_(gains), mode_(mode), mass_(compensation_mass) {
  gains_.validate();
  if (!(mass_ > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "controller: mass must be > 0");
  }
}

AttitudeThrustCmd QuadController::update(const TrajectorySample& ref,
                                         const QuadState& quad, const Vec3& f_low,
                                         const Vec3& f_high, double dt) {
  const Vec3 a_err = outer_loop(state_, ref, quad, gains_, dt);
  const Vec3 low = mode_ == CompensationMode::kBaseline ? Vec3::Zero() : f_low;
  const Vec3 high = mode_ == CompensationMode::kFull ? f_high : Vec3::Zero();
  a_c_ = compose_acceleration(a_err, ref, low, high, mass_);

  // Filtered derivative of the commanded acceleration.
  if (dt > 0.0) {
    if (jerk_seeded_) {
      const double tau = 1.0 / (2.0 * std::numbers::pi * gains_.jerk_cutoff_hz);
      jerk_ += dt / (dt + tau) * ((a_c_ - a_c_prev_) / dt - jerk_);
    }
    a_c_prev_ = a_c_;
    jerk_seeded_ = true;
  }

  AttitudeThrustCmd cmd;
  FlatAttitude flat{quad.R, 0.0};
  bool degenerate = false;
  try {
    flat = flatness_attitude_thrust(a_c_, ref.yaw, quad, gains_);
  } catch (const Error&) {
    // Commanded free fall or thrust along the heading axis: hold attitude,
    // minimum thrust.
    flat = {quad.R, gains_.thrust_min};
    degenerate = true;
  }
  cmd.R_des = flat.R_des;
  cmd.T_spec = std::clamp(flat.T_spec, gains_.thrust_min, gains_.thrust_max);
  Vec3 omega_ff(0.0, 0.0, ref.yaw_rate);
  if (gains_.jerk_feedforward && !degenerate) {
    omega_ff += jerk_body_rates(jerk_, flat, (a_c_ - gravity()).norm());
  }
  cmd.omega_d = body_rate_command(quad.R, flat.R_des, omega_ff, gains_);
  return cmd;
}

void QuadController::reset() {
  state_.reset();
  a_c_prev_.setZero();
  jerk_.setZero();
  jerk_seeded_ = false;
}

}  // namespace amctl
