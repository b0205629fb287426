#pragma once

#include <cmath>
#include <random>

#include "amctl/delta_kinematics.hpp"
#include "amctl/error.hpp"

namespace amctl::test {

// Joint vector on the elbow-out branch, clear of the fold: forward
// kinematics closes and every V_ii keeps the sign it has at q = 0 with at
// least `margin` magnitude.
inline bool on_working_branch(const JointVec& q, const DeltaGeometry& geom,
                              double margin = 1e-3) {
  if (!geom.within_limits(q)) return false;
  try {
    const Vec3 p = forward_position(q, geom);
    const Vec3 v = arm_jacobians(q, p, geom).v_diag;
    const JointVec zero = JointVec::Zero();
    const Vec3 v0 = arm_jacobians(zero, forward_position(zero, geom), geom).v_diag;
    for (int i = 0; i < 3; ++i) {
      if (v[i] * v0[i] <= 0.0 || std::abs(v[i]) < margin) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline JointVec random_reachable_q(std::mt19937_64& rng, const DeltaGeometry& geom) {
  std::uniform_real_distribution<double> u(geom.q_min, geom.q_max);
  for (;;) {
    const JointVec q(u(rng), u(rng), u(rng));
    if (on_working_branch(q, geom)) return q;
  }
}

inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

// Steady-state gain of a filter driven by a unit sine: the response is
// projected on sin and cos over whole periods after `settle_s`.
template <typename Step>
double sine_gain(Step&& step, double freq_hz, double f_s, double settle_s = 1.0,
                 int periods = 20) {
  const double dt = 1.0 / f_s;
  const double w = 2.0 * 3.141592653589793 * freq_hz;
  const long settle = std::lround(settle_s * f_s);
  const long measure = std::lround(periods / freq_hz * f_s);
  double s = 0.0;
  double c = 0.0;
  for (long k = 0; k < settle + measure; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double y = step(std::sin(w * t));
    if (k >= settle) {
      s += y * std::sin(w * t);
      c += y * std::cos(w * t);
    }
  }
  return 2.0 / static_cast<double>(measure) * std::hypot(s, c);
}

}  // namespace amctl::test
