#pragma once

// Ground-truth simulation of the airframe, arm servos, payload and wind.
//
// Translational:  a = (T * m * R e3 + f_drag + f_ext) / m + g,  m = m_B + m_M
// Rotational:     J w_dot = K_rate (w_d - w) + tau_ext - w x J w
// Attitude:       R_dot = R hat(w)
//
// The payload is a point mass at the end-effector. It never enters m; its
// effect reaches the airframe as the reaction wrench inside f_ext and
// tau_ext, plus its rotational inertia about the body origin.

#include <random>

#include "amctl/core.hpp"
#include "amctl/delta_kinematics.hpp"
#include "amctl/quad_state.hpp"

namespace amctl {

struct QuadParams {
  double m_base = 1.2788;
  double m_arm = 0.1034;
  double m_payload = 0.0;
  Vec3 inertia{0.012, 0.012, 0.02};  // diagonal, kg m^2
  double d_z = 0.05;                 // rotor drag along z_B, 1/s
  double thrust_min = 1.0;           // m/s^2
  double thrust_max = 20.0;          // m/s^2
  double rate_limit = 6.0;           // rad/s
  double rate_gain = 1.5;            // K_rate, N m s
  double rate_integral_gain = 12.0;  // N m / rad
  double rate_integral_limit = 0.5;  // N m
  double servo_tau = 0.02;           // s
  double servo_rate_limit = 6.0;     // rad/s

  double total_mass() const { return m_base + m_arm; }
  void validate() const;
};

struct Wrench {
  Vec3 f = Vec3::Zero();
  Vec3 tau = Vec3::Zero();
};

enum class WindKind { kNone, kConstant, kStep, kSine, kGustMix };

struct WindModel {
  WindKind kind = WindKind::kNone;
  Vec3 f_const = Vec3::Zero();
  Vec3 amplitude = Vec3::Zero();
  double freq_hz = 0.0;
  double t_step = 0.0;

  void validate() const;
};

Vec3 wind_force(const WindModel& model, double t);

/// Specific force along the body z axis after clamping, m/s^2.
double clamp_thrust(double t_spec, const QuadParams& params);

/// World acceleration of the airframe for a fixed external force.
Vec3 quadrotor_acceleration(const QuadState& state, const QuadParams& params,
                            double t_spec, const Vec3& f_ext);

/// One RK4 (Munthe-Kaas on the attitude) step with f_ext, tau_ext (body
/// frame) and the commands held over dt. Throws kNonFinite.
QuadState quadrotor_step(const QuadState& state, const QuadParams& params,
                         double t_spec, const Vec3& omega_d, const Vec3& f_ext,
                         const Vec3& tau_ext, double dt);

/// Same with an extra inertia (body frame, about the body origin) that
/// rotates rigidly with the airframe, e.g. a held payload.
QuadState quadrotor_step(const QuadState& state, const QuadParams& params,
                         double t_spec, const Vec3& omega_d, const Vec3& f_ext,
                         const Vec3& tau_ext, const Mat3& extra_inertia, double dt);

/// Wrench a rigidly held payload exerts on the airframe. f is world frame
/// and includes the static weight; tau is body frame about the body origin.
Wrench reaction_wrench(const Vec3& a_payload_world, double m_payload,
                       const Vec3& lever_body, const QuadState& quad);

/// First-order rate lag toward the clipped command, exact over dt; joint
/// limits stop the joint.
ArmState servo_step(const ArmState& arm, const JointVec& omega_cmd,
                    const QuadParams& params, const DeltaGeometry& geom,
                    double dt);

struct ImuModel {
  double accel_noise_std = 0.05;  // m/s^2
};

struct PlantStep {
  Vec3 wind = Vec3::Zero();
  Wrench reaction;
  Vec3 f_ext = Vec3::Zero();   // applied, world
  Vec3 tau_ext = Vec3::Zero(); // applied, body
  Vec3 a_true = Vec3::Zero();
  Vec3 a_meas = Vec3::Zero();
  Vec3 a_payload = Vec3::Zero();
  double t_spec = 0.0;         // applied (clamped)
};

/// Airframe + arm + payload + wind + IMU. One instance per run.
class Plant {
 public:
  Plant(const QuadParams& params, const DeltaGeometry& geom,
        const WindModel& wind, const ImuModel& imu, std::uint64_t seed);

  void set_state(const QuadState& quad, const ArmState& arm);

  /// Advances by dt with the commands held. Throws kNonFinite.
  const PlantStep& step(double t_spec, const Vec3& omega_d,
                        const JointVec& servo_cmd, double dt);

  double time() const { return t_; }
  const QuadState& quad() const { return quad_; }
  const ArmState& arm() const { return arm_; }
  const QuadParams& params() const { return params_; }
  const DeltaGeometry& geometry() const { return geom_; }
  const PlantStep& last() const { return last_; }

 private:
  QuadParams params_;
  DeltaGeometry geom_;
  WindModel wind_;
  ImuModel imu_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_{0.0, 1.0};

  double t_ = 0.0;
  QuadState quad_;
  ArmState arm_;
  Vec3 v_arm_ = Vec3::Zero();
  Vec3 rate_integral_ = Vec3::Zero();  // N m
  PlantStep last_;
};

}  // namespace amctl
