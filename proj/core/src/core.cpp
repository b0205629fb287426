#include "amctl/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amctl/error.hpp"

namespace amctl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoSolution: return "NoSolution";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kInconsistentInput: return "InconsistentInput";
    case ErrorCode::kSingularM: return "SingularM";
    case ErrorCode::kSingularV: return "SingularV";
    case ErrorCode::kInvalidCutoff: return "InvalidCutoff";
    case ErrorCode::kNotInitialized: return "NotInitialized";
    case ErrorCode::kDegenerateThrust: return "DegenerateThrust";
    case ErrorCode::kGimbalDegenerate: return "GimbalDegenerate";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

RotMat exp_so3(const Vec3& rotation_vector) {
  const double theta = rotation_vector.norm();
  const Mat3 k = hat(rotation_vector);
  if (theta < 1e-8) {
    // Second-order Taylor; the truncation error is below double precision.
    return Mat3::Identity() + k + 0.5 * k * k;
  }
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return Mat3::Identity() + a * k + b * k * k;
}

RotMat renormalize(const RotMat& r) {
  // Newton iteration for the polar factor; quadratic convergence, so
  // integration drift needs a single step.
  RotMat out = r;
  for (int it = 0; it < 8 && orthonormality_error(out) > 1e-14; ++it) {
    out = 0.5 * out * (3.0 * Mat3::Identity() - out.transpose() * out);
  }
  return out;
}

RotMat integrate_rotation(const RotMat& r, const Vec3& omega_body, double dt) {
  if (omega_body.isZero(0.0)) return r;
  return renormalize(r * exp_so3(omega_body * dt));
}

double orthonormality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

RotMat rot_x(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitX()).toRotationMatrix();
}

RotMat rot_y(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitY()).toRotationMatrix();
}

RotMat rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
}

Vec3 yaw_pitch_roll(const RotMat& r) {
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  const double roll = std::atan2(r(2, 1), r(2, 2));
  return {yaw, pitch, roll};
}

double wrap_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

bool all_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace amctl
