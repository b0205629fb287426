#pragma once

#include <string_view>

#include "amctl/controllers.hpp"

namespace amctl {

enum class TrajectoryKind { kSetpoint, kCircle, kLemniscate, kLineScan };

std::string_view to_string(TrajectoryKind kind);
TrajectoryKind trajectory_kind_from_string(std::string_view name);

/// Analytic reference generators. Position, velocity and acceleration are
/// exact derivatives of one another. Before start_s the reference holds its
/// t = 0 position at rest.
struct TrajectoryParams {
  TrajectoryKind kind = TrajectoryKind::kSetpoint;
  Vec3 center = Vec3::Zero();
  double start_s = 0.0;
  double yaw = 0.0;

  // circle: p = center + r (cos th, sin th, 0), th_dot = speed / r
  double diameter = 0.12;
  // circle: tangential speed; line scan: cruise speed; lemniscate: speed cap
  double speed = 0.05;

  // lemniscate of Gerono: p = center + (a sin th, b sin th cos th, 0)
  double lemniscate_a = 2.0;
  double lemniscate_b = 1.0;

  // line scan: back and forth along `axis` over `length`, constant cruise
  // speed, half-cosine velocity reversals peaking at max_accel. Starts at
  // rest at center - length/2 * axis.
  Vec3 axis = Vec3::UnitX();
  double length = 0.08;
  double max_accel = 0.3 * kGravityMagnitude;

  /// Throws kInvalidParams.
  void validate() const;
};

TrajectorySample gen_trajectory(const TrajectoryParams& params, double t);

}  // namespace amctl
