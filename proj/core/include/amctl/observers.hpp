#pragma once

// Disturbance estimation.
//
// Low-frequency path: a nonlinear disturbance observer integrates the
// residual between the measured specific force and the commanded thrust,
//
//   f_hat += (c / m) * (m * a_meas - m * g - m * T * R * e3 - f_hat) * dt,
//
// which converges to f_ext of m * a = T * R * e3 + m * g + f_ext as a
// first-order lag with bandwidth c / m. The estimate is smoothed by a
// second-order Butterworth low-pass.
//
// High-frequency path: the payload's acceleration in the arm frame, rotated
// into the world and scaled by the payload mass, is high-pass filtered. The
// reaction on the vehicle is the negative of that force, so the value
// returned as f_high is in the same (disturbance) convention as f_hat.

#include <array>
#include <optional>

#include "amctl/core.hpp"

namespace amctl {

enum class FilterKind { kLowPass, kHighPass };

/// Direct form II transposed biquad.
class Biquad {
 public:
  Biquad() = default;
  Biquad(double b0, double b1, double b2, double a1, double a2, double f_cut,
         double f_s);

  double step(double x);
  /// Sets the delay line so that a constant input `value` is a fixed point.
  void reset(double value = 0.0);

  /// |H(e^{j 2 pi f / f_s})|
  double magnitude(double freq_hz) const;
  double dc_gain() const;

  double b0() const { return b0_; }
  double b1() const { return b1_; }
  double b2() const { return b2_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double f_cut() const { return f_cut_; }
  double f_s() const { return f_s_; }

 private:
  double b0_ = 1.0, b1_ = 0.0, b2_ = 0.0, a1_ = 0.0, a2_ = 0.0;
  double z1_ = 0.0, z2_ = 0.0;
  double f_cut_ = 0.0, f_s_ = 0.0;
};

/// Second-order Butterworth via the bilinear transform with cutoff
/// prewarping. Throws kInvalidCutoff unless 0 < f_cut < f_s / 2.
Biquad butterworth2_design(double f_cut, double f_s, FilterKind kind);

/// Three independent biquads, one per axis.
class Biquad3 {
 public:
  Biquad3() = default;
  explicit Biquad3(const Biquad& prototype) : axes_{prototype, prototype, prototype} {}

  Vec3 step(const Vec3& x);
  void reset(const Vec3& value = Vec3::Zero());

 private:
  std::array<Biquad, 3> axes_;
};

struct NdobConfig {
  double c = 13.822;          // observer gain; bandwidth is c / mass
  double mass = 1.3822;       // kg
  double sensor_rate_hz = 1000.0;
  double butter_cutoff_hz = 50.0;
};

/// Force observer state machine. Single owner; not thread-safe.
class NdobState {
 public:
  explicit NdobState(const NdobConfig& config);

  /// Must be called before the first step.
  void reset(const Vec3& f_hat0 = Vec3::Zero());

  /// One observer update. a_meas is the world-frame acceleration from the
  /// IMU, thrust_spec the applied mass-normalized thrust (m/s^2), R the
  /// current attitude. Returns the low-pass filtered estimate.
  /// Throws kNotInitialized before reset().
  Vec3 ndob_step(const Vec3& a_meas, double thrust_spec, const RotMat& R,
                 double dt);

  const Vec3& f_hat() const { return f_hat_; }
  const Vec3& filtered() const { return filtered_; }
  double c() const { return config_.c; }
  double mass() const { return config_.mass; }
  /// Bandwidth of the observer, rad/s.
  double bandwidth() const { return config_.c / config_.mass; }
  /// Number of steps whose dt was more than 10% off the sensor period.
  int dt_warnings() const { return dt_warnings_; }

 private:
  NdobConfig config_;
  Vec3 f_hat_ = Vec3::Zero();
  Vec3 filtered_ = Vec3::Zero();
  Biquad3 lp_;
  bool initialized_ = false;
  int dt_warnings_ = 0;
};

/// First-order high-pass (bilinear, prewarped). The first sample seeds the
/// input history so a signal that is constant from the start produces zero.
class FirstOrderHighPass {
 public:
  explicit FirstOrderHighPass(double f_cut_hz = 1.0) : f_cut_(f_cut_hz) {}

  double step(double x, double dt);
  void reset();
  double f_cut() const { return f_cut_; }

 private:
  double f_cut_;
  double x_prev_ = 0.0;
  double y_prev_ = 0.0;
  bool seeded_ = false;
};

/// High-frequency estimator memories: per-axis high-pass plus the previous
/// arm velocity for differentiation.
class HighPassState {
 public:
  explicit HighPassState(double f_cut_hp_hz);

  /// Backward difference of the arm-frame end-effector velocity. The first
  /// call returns zero and seeds the history.
  Vec3 arm_acceleration_estimate(const Vec3& v_arm_now, double dt);

  /// Per-axis first-order high-pass of f_end.
  Vec3 highpass_step(const Vec3& f_end, double dt);

  void reset();
  double f_cut_hp() const { return f_cut_hp_; }

 private:
  double f_cut_hp_;
  std::array<FirstOrderHighPass, 3> hp_;
  std::optional<Vec3> prev_velocity_;
};

/// Force needed to accelerate the payload: m_payload * R_world_arm * a_arm.
Vec3 end_effector_force(const RotMat& r_world_arm, const Vec3& a_arm,
                        double m_payload);

/// lever x force
Vec3 high_torque(const Vec3& f_high, const Vec3& lever_body);

/// Default high-pass cutoff that matches the observer bandwidth, Hz.
double matched_highpass_cutoff(double c, double mass);

struct HighFrequencyEstimate {
  Vec3 a_arm = Vec3::Zero();   // differentiated end-effector acceleration (arm or world frame)
  Vec3 f_end = Vec3::Zero();   // force on the payload, world
  Vec3 f_high = Vec3::Zero();  // disturbance on the vehicle, world
  Vec3 tau_high = Vec3::Zero();  // body frame
};

/// Differentiates the arm velocity, forms the payload force and high-passes
/// its reaction. Runs at the servo feedback rate.
class HighFrequencyEstimator {
 public:
  HighFrequencyEstimator(double f_cut_hp_hz, double m_payload);

  HighFrequencyEstimate step(const Vec3& v_arm, const RotMat& r_world_arm,
                             const RotMat& r_world_body, const Vec3& lever_body,
                             double dt);
  /// Same from the world-frame end-effector velocity, so motion that only
  /// cancels the airframe's own motion produces no force.
  HighFrequencyEstimate step_world(const Vec3& v_ee_world, const RotMat& r_world_body,
                                   const Vec3& lever_body, double dt);
  void reset();
  const HighPassState& state() const { return state_; }

 private:
  HighPassState state_;
  double m_payload_;
};

}  // namespace amctl
