#pragma once

// Frame conventions shared by every module:
//   world   z-up, gravity (0, 0, -9.80665) m/s^2
//   body    x-forward, y-left, z-up along the thrust axis
//   arm     rigidly mounted under the body; the end-effector workspace is at
//           negative arm-frame z
// Plant translational dynamics in this convention:
//   m * a = T * R * e3 + m * g + f_ext

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace amctl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
/// Orthonormal 3x3 with det = +1. Kept as a plain Eigen matrix so the usual
/// algebra works; functions that produce one guarantee the invariant.
using RotMat = Eigen::Matrix3d;

inline constexpr double kGravityMagnitude = 9.80665;

inline Vec3 gravity() { return {0.0, 0.0, -kGravityMagnitude}; }
inline Vec3 e3() { return Vec3::UnitZ(); }

Mat3 hat(const Vec3& v);
Vec3 vee(const Mat3& m);

/// Rodrigues exponential of a rotation vector.
RotMat exp_so3(const Vec3& rotation_vector);

/// R * exp(hat(omega) * dt) with omega in the body frame, followed by a
/// renormalization step.
RotMat integrate_rotation(const RotMat& r, const Vec3& omega_body, double dt);

/// Projects a nearly orthonormal matrix back onto SO(3).
RotMat renormalize(const RotMat& r);

/// max |(R^T R - I)_ij|
double orthonormality_error(const Mat3& r);

RotMat rot_x(double angle);
RotMat rot_y(double angle);
RotMat rot_z(double angle);

/// ZYX Euler angles (yaw, pitch, roll) of a rotation matrix.
Vec3 yaw_pitch_roll(const RotMat& r);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

bool all_finite(const Vec3& v);

}  // namespace amctl
