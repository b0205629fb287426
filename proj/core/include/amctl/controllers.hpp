#pragma once

#include "amctl/core.hpp"
#include "amctl/delta_kinematics.hpp"
#include "amctl/quad_state.hpp"

namespace amctl {

struct TrajectorySample {
  Vec3 p_d = Vec3::Zero();
  Vec3 v_d = Vec3::Zero();
  Vec3 a_d = Vec3::Zero();
  double yaw = 0.0;
  double yaw_rate = 0.0;
};

/// Which projection of the desired acceleration sets the thrust magnitude.
enum class ThrustProjection { kCurrent, kDesired };

/// Which disturbance estimates feed the acceleration command.
enum class CompensationMode { kBaseline, kNdobOnly, kFull };

struct Gains {
  // Quadrotor outer loop, per axis.
  Vec3 kpp = Vec3::Constant(2.0);
  Vec3 kvp = Vec3::Constant(4.0);
  Vec3 kvi = Vec3::Constant(1.0);
  Vec3 kvd = Vec3::Constant(0.1);
  Vec3 integral_limit = Vec3::Constant(2.0);
  double derivative_cutoff_hz = 20.0;

  // Arm loop, per axis.
  Vec3 kp_arm = Vec3::Constant(8.0);
  Vec3 kd_arm = Vec3::Constant(0.5);
  double servo_rate_limit = 6.0;  // rad/s
  // Rotation term of the arm's world-target velocity feedforward, from the
  // reference attitude rate.
  bool arm_reference_rate_ff = true;

  double k_att = 8.0;       // 1/s
  double rate_limit = 6.0;  // rad/s, body-rate command clip
  double d_z = 0.05;        // 1/s, rotor drag
  double thrust_min = 1.0;  // m/s^2
  double thrust_max = 20.0; // m/s^2
  double thrust_epsilon = 1e-6;
  ThrustProjection thrust_projection = ThrustProjection::kCurrent;
  // Body-rate feedforward from the filtered derivative of a_c.
  bool jerk_feedforward = true;
  double jerk_cutoff_hz = 10.0;

  void validate() const;
};

/// Integral and derivative memory of the velocity PID.
struct OuterLoopState {
  Vec3 v_integral = Vec3::Zero();
  Vec3 prev_error = Vec3::Zero();
  Vec3 error_rate = Vec3::Zero();  // low-pass filtered d/dt of the error
  bool seeded = false;

  void reset() { *this = OuterLoopState{}; }
};

/// Cascade PID: position error -> velocity command -> acceleration.
/// A non-positive dt evaluates the law without touching the state.
Vec3 outer_loop(OuterLoopState& state, const TrajectorySample& ref,
                const QuadState& quad, const Gains& gains, double dt);

/// a_c = a_d + a_err - (f_low + f_high) / mass
Vec3 compose_acceleration(const Vec3& a_err, const TrajectorySample& ref,
                          const Vec3& f_low, const Vec3& f_high, double mass);

struct AttitudeThrustCmd {
  double T_spec = kGravityMagnitude;
  RotMat R_des = RotMat::Identity();
  Vec3 omega_d = Vec3::Zero();
};

struct FlatAttitude {
  RotMat R_des;
  double T_spec;
};

/// Desired attitude from the thrust direction and yaw; thrust magnitude
/// projected on z_B (current or desired per gains), including rotor drag.
/// Throws kDegenerateThrust / kGimbalDegenerate.
FlatAttitude flatness_attitude_thrust(const Vec3& a_c, double yaw,
                                      const QuadState& quad, const Gains& gains);

/// Rotation-error P law plus yaw-rate feedforward, clipped per axis.
Vec3 body_rate_command(const RotMat& R, const RotMat& R_des, double yaw_rate_ff,
                       const Gains& gains);
/// Same with a full feedforward rate given in the desired body frame.
Vec3 body_rate_command(const RotMat& R, const RotMat& R_des, const Vec3& omega_ff,
                       const Gains& gains);

/// Roll and pitch rates (desired body frame) that turn the thrust axis at
/// the rate the commanded acceleration changes; collective is |a_c - g|.
Vec3 jerk_body_rates(const Vec3& jerk, const FlatAttitude& flat, double collective);

struct ArmCommand {
  JointVec q_dot = JointVec::Zero();
  Vec3 v_c = Vec3::Zero();
  bool saturated = false;
  bool singular = false;
};

/// PD on end-effector position in the arm frame, mapped to joint rates by
/// the velocity inverse kinematics. At a fold singularity the command is
/// zero and `singular` is set. Rates exceeding the servo limit are scaled
/// down uniformly so the end-effector direction is preserved.
ArmCommand arm_velocity_command(const Vec3& p_d, const Vec3& v_d,
                                const ArmState& arm, const DeltaGeometry& geom,
                                const Gains& gains);

/// Outer loop, compensation, flatness and rate command chained together.
class QuadController {
 public:
  QuadController(const Gains& gains, CompensationMode mode,
                 double compensation_mass);

  AttitudeThrustCmd update(const TrajectorySample& ref, const QuadState& quad,
                           const Vec3& f_low, const Vec3& f_high, double dt);

  const OuterLoopState& state() const { return state_; }
  const Vec3& last_acceleration() const { return a_c_; }
  CompensationMode mode() const { return mode_; }
  void reset();

 private:
  Gains gains_;
  CompensationMode mode_;
  double mass_;
  OuterLoopState state_;
  Vec3 a_c_ = Vec3::Zero();
  Vec3 a_c_prev_ = Vec3::Zero();
  Vec3 jerk_ = Vec3::Zero();
  bool jerk_seeded_ = false;
};

}  // namespace amctl
