#include "amctl/observers.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "amctl/error.hpp"

namespace amctl {

Biquad::Biquad(double b0, double b1, double b2, double a1, double a2,
               double f_cut, double f_s)
    : b0_(b0), b1_(b1), b2_(b2), a1_(a1), a2_(a2), f_cut_(f_cut), f_s_(f_s) {}

double Biquad::step(double x) {
  const double y = b0_ * x + z1_;
  z1_ = b1_ * x - a1_ * y + z2_;
  z2_ = b2_ * x - a2_ * y;
  return y;
}

void Biquad::reset(double value) {
  const double y = dc_gain() * value;
  z2_ = b2_ * value - a2_ * y;
  z1_ = y - b0_ * value;
}

double Biquad::dc_gain() const {
  return (b0_ + b1_ + b2_) / (1.0 + a1_ + a2_);
}

double Biquad::magnitude(double freq_hz) const {
  const double w = 2.0 * std::numbers::pi * freq_hz / f_s_;
  const std::complex<double> zi = std::polar(1.0, -w);
  const std::complex<double> num = b0_ + b1_ * zi + b2_ * zi * zi;
  const std::complex<double> den = 1.0 + a1_ * zi + a2_ * zi * zi;
  return std::abs(num / den);
}

Biquad butterworth2_design(double f_cut, double f_s, FilterKind kind) {
  if (!(f_cut > 0.0 && f_s > 0.0 && f_cut < 0.5 * f_s)) {
    std::ostringstream msg;
    msg << "butterworth2_design: cutoff " << f_cut
        << " Hz must lie in (0, f_s/2) for f_s = " << f_s << " Hz";
    throw Error(ErrorCode::kInvalidCutoff, msg.str());
  }
  const double k = std::tan(std::numbers::pi * f_cut / f_s);
  const double k2 = k * k;
  const double norm = 1.0 / (1.0 + std::numbers::sqrt2 * k + k2);
  const double a1 = 2.0 * (k2 - 1.0) * norm;
  const double a2 = (1.0 - std::numbers::sqrt2 * k + k2) * norm;
  if (kind == FilterKind::kLowPass) {
    const double b0 = k2 * norm;
    return Biquad(b0, 2.0 * b0, b0, a1, a2, f_cut, f_s);
  }
  return Biquad(norm, -2.0 * norm, norm, a1, a2, f_cut, f_s);
}

Vec3 Biquad3::step(const Vec3& x) {
  return {axes_[0].step(x.x()), axes_[1].step(x.y()), axes_[2].step(x.z())};
}

void Biquad3::reset(const Vec3& value) {
  for (int i = 0; i < 3; ++i) axes_[i].reset(value[i]);
}

NdobState::NdobState(const NdobConfig& config) : config_(config) {
  if (!(config.c > 0.0 && config.mass > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "ndob: c and mass must be > 0");
  }
  lp_ = Biquad3(butterworth2_design(config.butter_cutoff_hz,
                                    config.sensor_rate_hz, FilterKind::kLowPass));
}

void NdobState::reset(const Vec3& f_hat0) {
  f_hat_ = f_hat0;
  filtered_ = f_hat0;
  lp_.reset(f_hat0);
  dt_warnings_ = 0;
  initialized_ = true;
}

Vec3 NdobState::ndob_step(const Vec3& a_meas, double thrust_spec,
                          const RotMat& R, double dt) {
  if (!initialized_) {
    throw Error(ErrorCode::kNotInitialized, "ndob_step called before reset");
  }
  const double period = 1.0 / config_.sensor_rate_hz;
  if (std::abs(dt - period) > 0.1 * period) ++dt_warnings_;

  const double m = config_.mass;
  const Vec3 innovation =
      m * (a_meas - gravity() - thrust_spec * (R * e3())) - f_hat_;
  f_hat_ += (config_.c / m) * innovation * dt;
  filtered_ = lp_.step(f_hat_);
  return filtered_;
}

double FirstOrderHighPass::step(double x, double dt) {
  if (!seeded_) {
    x_prev_ = x;
    y_prev_ = 0.0;
    seeded_ = true;
  }
  const double k = std::tan(std::numbers::pi * f_cut_ * dt);
  const double y = (x - x_prev_ - (k - 1.0) * y_prev_) / (1.0 + k);
  x_prev_ = x;
  y_prev_ = y;
  return y;
}

void FirstOrderHighPass::reset() {
  x_prev_ = 0.0;
  y_prev_ = 0.0;
  seeded_ = false;
}

HighPassState::HighPassState(double f_cut_hp_hz)
    : f_cut_hp_(f_cut_hp_hz),
      hp_{FirstOrderHighPass(f_cut_hp_hz), FirstOrderHighPass(f_cut_hp_hz),
          FirstOrderHighPass(f_cut_hp_hz)} {
  if (!(f_cut_hp_hz > 0.0)) {
    throw Error(ErrorCode::kInvalidCutoff, "high-pass cutoff must be > 0");
  }
}

Vec3 HighPassState::arm_acceleration_estimate(const Vec3& v_arm_now, double dt) {
  if (!prev_velocity_) {
    prev_velocity_ = v_arm_now;
    return Vec3::Zero();
  }
  const Vec3 a = (v_arm_now - *prev_velocity_) / dt;
  prev_velocity_ = v_arm_now;
  return a;
}

Vec3 HighPassState::highpass_step(const Vec3& f_end, double dt) {
  return {hp_[0].step(f_end.x(), dt), hp_[1].step(f_end.y(), dt),
          hp_[2].step(f_end.z(), dt)};
}

void HighPassState::reset() {
  for (auto& hp : hp_) hp.reset();
  prev_velocity_.reset();
}

Vec3 end_effector_force(const RotMat& r_world_arm, const Vec3& a_arm,
                        double m_payload) {
  return m_payload * (r_world_arm * a_arm);
}

Vec3 high_torque(const Vec3& f_high, const Vec3& lever_body) {
  return lever_body.cross(f_high);
}

double matched_highpass_cutoff(double c, double mass) {
  return c / (2.0 * std::numbers::pi * mass);
}

HighFrequencyEstimator::HighFrequencyEstimator(double f_cut_hp_hz,
                                               double m_payload)
    : state_(f_cut_hp_hz), m_payload_(m_payload) {
  if (m_payload < 0.0) {
    throw Error(ErrorCode::kInvalidParams, "payload mass must be >= 0");
  }
}

HighFrequencyEstimate HighFrequencyEstimator::step(const Vec3& v_arm,
                                                   const RotMat& r_world_arm,
                                                   const RotMat& r_world_body,
                                                   const Vec3& lever_body,
                                                   double dt) {
  HighFrequencyEstimate out;
  out.a_arm = state_.arm_acceleration_estimate(v_arm, dt);
  out.f_end = end_effector_force(r_world_arm, out.a_arm, m_payload_);
  // The vehicle feels the reaction -f_end.
  out.f_high = -state_.highpass_step(out.f_end, dt);
  out.tau_high = high_torque(r_world_body.transpose() * out.f_high, lever_body);
  return out;
}

HighFrequencyEstimate HighFrequencyEstimator::step_world(const Vec3& v_ee_world,
                                                         const RotMat& r_world_body,
                                                         const Vec3& lever_body,
                                                         double dt) {
  HighFrequencyEstimate out;
  out.a_arm = state_.arm_acceleration_estimate(v_ee_world, dt);
  out.f_end = m_payload_ * out.a_arm;
  out.f_high = -state_.highpass_step(out.f_end, dt);
  out.tau_high = high_torque(r_world_body.transpose() * out.f_high, lever_body);
  return out;
}

void HighFrequencyEstimator::reset() { state_.reset(); }

}  // namespace amctl
