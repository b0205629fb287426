#include "amctl/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "amctl/error.hpp"

namespace amctl {

void QuadParams::validate() const {
  if (!(m_base > 0.0 && m_arm > 0.0 && m_payload >= 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "quad: masses must be > 0 (payload >= 0)");
  }
  if (!((inertia.array() > 0.0).all())) {
    throw Error(ErrorCode::kInvalidParams, "quad: inertia must be positive");
  }
  if (!(d_z >= 0.0 && thrust_min >= 0.0 && thrust_max > thrust_min &&
        rate_limit > 0.0 && rate_gain > 0.0 && rate_integral_gain >= 0.0 &&
        rate_integral_limit >= 0.0 && servo_tau > 0.0 &&
        servo_rate_limit > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "quad: invalid limits or gains");
  }
}

void WindModel::validate() const {
  if (!(freq_hz >= 0.0) || !f_const.allFinite() || !amplitude.allFinite()) {
    throw Error(ErrorCode::kInvalidParams, "wind: freq must be >= 0, forces finite");
  }
}

Vec3 wind_force(const WindModel& model, double t) {
  const double phase = 2.0 * std::numbers::pi * model.freq_hz * t;
  switch (model.kind) {
    case WindKind::kNone:
      return Vec3::Zero();
    case WindKind::kConstant:
      return model.f_const;
    case WindKind::kStep:
      return t >= model.t_step ? model.f_const : Vec3::Zero();
    case WindKind::kSine:
      return model.amplitude * std::sin(phase);
    case WindKind::kGustMix:
      return model.f_const + model.amplitude * std::sin(phase);
  }
  return Vec3::Zero();
}

double clamp_thrust(double t_spec, const QuadParams& params) {
  return std::clamp(t_spec, params.thrust_min, params.thrust_max);
}

namespace {

Vec3 translational_acceleration(const RotMat& R, const Vec3& v,
                                const QuadParams& params, double t_spec,
                                const Vec3& f_ext) {
  const Vec3 z_b = R.col(2);
  const Vec3 drag = -params.d_z * z_b * z_b.dot(v);
  return t_spec * z_b + drag + f_ext / params.total_mass() + gravity();
}

Vec3 angular_acceleration(const Vec3& omega, const QuadParams& params,
                          const Mat3& inertia, const Vec3& omega_d,
                          const Vec3& tau_ext) {
  const Vec3 tau = params.rate_gain * (omega_d - omega) + tau_ext -
                   omega.cross(inertia * omega);
  return inertia.ldlt().solve(tau);
}

// Right-trivialized inverse differential of exp, truncated after the
// third-order term (enough for a fourth-order step).
Vec3 dexp_inv(const Vec3& xi, const Vec3& omega) {
  const Vec3 xo = xi.cross(omega);
  return omega + 0.5 * xo + xi.cross(xo) / 12.0;
}

struct Stage {
  Vec3 p, v, omega, xi;
};

}  // namespace

Vec3 quadrotor_acceleration(const QuadState& state, const QuadParams& params,
                            double t_spec, const Vec3& f_ext) {
  return translational_acceleration(state.R, state.v, params,
                                    clamp_thrust(t_spec, params), f_ext);
}

QuadState quadrotor_step(const QuadState& state, const QuadParams& params,
                         double t_spec, const Vec3& omega_d, const Vec3& f_ext,
                         const Vec3& tau_ext, double dt) {
  return quadrotor_step(state, params, t_spec, omega_d, f_ext, tau_ext, Mat3::Zero(), dt);
}

QuadState quadrotor_step(const QuadState& state, const QuadParams& params,
                         double t_spec, const Vec3& omega_d, const Vec3& f_ext,
                         const Vec3& tau_ext, const Mat3& extra_inertia, double dt) {
  const Mat3 inertia = Mat3(params.inertia.asDiagonal()) + extra_inertia;
  const double thrust = clamp_thrust(t_spec, params);
  const Vec3 rate_cmd =
      omega_d.cwiseMax(-params.rate_limit).cwiseMin(params.rate_limit);
  const RotMat r0 = state.R;

  const auto deriv = [&](const Stage& s) {
    const RotMat R = r0 * exp_so3(s.xi);
    return Stage{s.v, translational_acceleration(R, s.v, params, thrust, f_ext),
                 angular_acceleration(s.omega, params, inertia, rate_cmd, tau_ext),
                 dexp_inv(s.xi, s.omega)};
  };
  const auto axpy = [](const Stage& y, const Stage& k, double h) {
    return Stage{y.p + h * k.p, y.v + h * k.v, y.omega + h * k.omega,
                 y.xi + h * k.xi};
  };

  const Stage y0{state.p, state.v, state.omega, Vec3::Zero()};
  const Stage k1 = deriv(y0);
  const Stage k2 = deriv(axpy(y0, k1, 0.5 * dt));
  const Stage k3 = deriv(axpy(y0, k2, 0.5 * dt));
  const Stage k4 = deriv(axpy(y0, k3, dt));

  QuadState next;
  next.p = state.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  next.v = state.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  next.omega =
      state.omega + dt / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega);
  const Vec3 xi = dt / 6.0 * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi);
  next.R = xi.isZero(0.0) ? r0 : renormalize(r0 * exp_so3(xi));

  if (!next.finite()) {
    std::ostringstream msg;
    msg << "quadrotor_step: state left the finite range (p = "
        << next.p.transpose() << ")";
    throw Error(ErrorCode::kNonFinite, msg.str());
  }
  return next;
}

Wrench reaction_wrench(const Vec3& a_payload_world, double m_payload,
                       const Vec3& lever_body, const QuadState& quad) {
  Wrench w;
  w.f = -m_payload * (a_payload_world - gravity());
  w.tau = lever_body.cross(quad.R.transpose() * w.f);
  return w;
}

ArmState servo_step(const ArmState& arm, const JointVec& omega_cmd,
                    const QuadParams& params, const DeltaGeometry& geom,
                    double dt) {
  const JointVec cmd = omega_cmd.cwiseMax(-params.servo_rate_limit)
                           .cwiseMin(params.servo_rate_limit);
  const double decay = std::exp(-dt / params.servo_tau);
  ArmState next;
  next.q_dot = cmd + (arm.q_dot - cmd) * decay;
  next.q = arm.q + cmd * dt + (arm.q_dot - cmd) * params.servo_tau * (1.0 - decay);
  for (int i = 0; i < 3; ++i) {
    if (next.q[i] < geom.q_min) {
      next.q[i] = geom.q_min;
      next.q_dot[i] = 0.0;
    } else if (next.q[i] > geom.q_max) {
      next.q[i] = geom.q_max;
      next.q_dot[i] = 0.0;
    }
  }
  return next;
}

Plant::Plant(const QuadParams& params, const DeltaGeometry& geom,
             const WindModel& wind, const ImuModel& imu, std::uint64_t seed)
    : params_(params), geom_(geom), wind_(wind), imu_(imu), rng_(seed) {
  params_.validate();
  geom_.validate();
  wind_.validate();
}

void Plant::set_state(const QuadState& quad, const ArmState& arm) {
  quad_ = quad;
  arm_ = arm;
  v_arm_ = forward_velocity(arm_.q, arm_.q_dot, geom_);
  rate_integral_.setZero();
}

const PlantStep& Plant::step(double t_spec, const Vec3& omega_d,
                             const JointVec& servo_cmd, double dt) {
  PlantStep out;
  out.t_spec = clamp_thrust(t_spec, params_);
  out.wind = wind_force(wind_, t_);

  // Arm motion over this step; its mean acceleration drives the reaction.
  const ArmState arm_next = servo_step(arm_, servo_cmd, params_, geom_, dt);
  const Vec3 p_arm_next = forward_position(arm_next.q, geom_);
  const Vec3 v_arm_next = forward_velocity(
      arm_jacobians(arm_next.q, p_arm_next, geom_), arm_next.q_dot, geom_);
  const Vec3 a_arm = (v_arm_next - v_arm_) / dt;

  Vec3 tau_ext = Vec3::Zero();
  Mat3 payload_inertia = Mat3::Zero();
  if (params_.m_payload > 0.0) {
    const Vec3 p_arm = forward_position(arm_.q, geom_);
    const RotMat r_e = quad_.R * geom_.r_mount;
    const Vec3 lever_body = arm_to_body(p_arm, geom_);
    const Vec3 lever_w = quad_.R * lever_body;
    const Vec3 omega_w = quad_.omega_world();
    // The angular-acceleration term is carried implicitly as extra inertia.
    const Vec3 a_rel = r_e * a_arm + 2.0 * omega_w.cross(r_e * v_arm_) +
                       omega_w.cross(omega_w.cross(lever_w));
    const Mat3 l_hat = hat(lever_body);
    payload_inertia = -params_.m_payload * l_hat * l_hat;

    // Airframe and payload accelerate together; solve the coupled balance
    // for the airframe, then read the payload's acceleration off it.
    const double m = params_.total_mass();
    const double mp = params_.m_payload;
    const Vec3 z_b = quad_.R.col(2);
    const Vec3 own = m * (out.t_spec * z_b - params_.d_z * z_b * z_b.dot(quad_.v));
    const Vec3 a_quad = (own + out.wind - mp * a_rel) / (m + mp) + gravity();
    out.a_payload = a_quad + a_rel;
    out.reaction = reaction_wrench(out.a_payload, mp, lever_body, quad_);
    tau_ext = out.reaction.tau;
  }
  out.f_ext = out.reaction.f + out.wind;
  out.tau_ext = tau_ext;
  if (out.f_ext != out.reaction.f + out.wind) {
    throw Error(ErrorCode::kNonFinite, "plant: external force bookkeeping mismatch");
  }

  // Integral part of the rate loop, held over the step.
  if (params_.rate_integral_gain > 0.0) {
    const Vec3 rate_cmd =
        omega_d.cwiseMax(-params_.rate_limit).cwiseMin(params_.rate_limit);
    rate_integral_ =
        (rate_integral_ + params_.rate_integral_gain * (rate_cmd - quad_.omega) * dt)
                         .cwiseMax(-params_.rate_integral_limit)
                         .cwiseMin(params_.rate_integral_limit);
  }
  quad_ = quadrotor_step(quad_, params_, out.t_spec, omega_d, out.f_ext,
                         out.tau_ext + rate_integral_, payload_inertia, dt);
  arm_ = arm_next;
  v_arm_ = v_arm_next;
  t_ += dt;

  out.a_true = quadrotor_acceleration(quad_, params_, out.t_spec, out.f_ext);
  out.a_meas = out.a_true;
  if (imu_.accel_noise_std > 0.0) {
    for (int i = 0; i < 3; ++i) out.a_meas[i] += imu_.accel_noise_std * noise_(rng_);
  }
  last_ = out;
  return last_;
}

}  // namespace amctl
