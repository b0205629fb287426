#pragma once

#include "amctl/core.hpp"

namespace amctl {

/// Rigid-body state of the quadrotor. omega is expressed in the body frame.
struct QuadState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  RotMat R = RotMat::Identity();
  Vec3 omega = Vec3::Zero();

  Vec3 omega_world() const { return R * omega; }
  bool finite() const {
    return p.allFinite() && v.allFinite() && R.allFinite() && omega.allFinite();
  }
};

}  // namespace amctl
