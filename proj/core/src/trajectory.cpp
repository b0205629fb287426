#include "amctl/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "amctl/error.hpp"

namespace amctl {

std::string_view to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::kSetpoint: return "setpoint";
    case TrajectoryKind::kCircle: return "circle";
    case TrajectoryKind::kLemniscate: return "lemniscate";
    case TrajectoryKind::kLineScan: return "line_scan";
  }
  return "setpoint";
}

TrajectoryKind trajectory_kind_from_string(std::string_view name) {
  if (name == "setpoint") return TrajectoryKind::kSetpoint;
  if (name == "circle") return TrajectoryKind::kCircle;
  if (name == "lemniscate") return TrajectoryKind::kLemniscate;
  if (name == "line_scan") return TrajectoryKind::kLineScan;
  throw Error(ErrorCode::kInvalidParams,
              "unknown trajectory kind '" + std::string(name) + "'");
}

void TrajectoryParams::validate() const {
  const auto bad = [](const char* what) {
    throw Error(ErrorCode::kInvalidParams, std::string("trajectory: ") + what);
  };
  if (!center.allFinite() || !std::isfinite(start_s) || start_s < 0.0) {
    bad("center must be finite, start_s >= 0");
  }
  if (!(speed >= 0.0)) bad("speed must be >= 0");
  switch (kind) {
    case TrajectoryKind::kSetpoint:
      break;
    case TrajectoryKind::kCircle:
      if (!(diameter > 0.0)) bad("circle diameter must be > 0");
      break;
    case TrajectoryKind::kLemniscate:
      if (!(lemniscate_a > 0.0 && lemniscate_b >= 0.0)) {
        bad("lemniscate needs a > 0, b >= 0");
      }
      break;
    case TrajectoryKind::kLineScan:
      if (!(length > 0.0 && max_accel > 0.0 && axis.norm() > 1e-9)) {
        bad("line scan needs length > 0, max_accel > 0, nonzero axis");
      }
      if (speed * speed / max_accel * 2.0 > length) {
        bad("line scan too short to reach cruise speed at max_accel");
      }
      break;
  }
}

namespace {

struct Scalar {
  double s, ds, dds;
};

// One period starts at the beginning of the reversal at the negative end.
Scalar line_scan_profile(double v, double a_max, double length, double tau) {
  if (v <= 0.0) return {-0.5 * length, 0.0, 0.0};
  const double pi = std::numbers::pi;
  const double t_rev = pi * v / a_max;
  const double d_rev = v * v / a_max;
  const double t_cruise = (length - 2.0 * d_rev) / v;
  const double half = t_rev + t_cruise;
  const double period = 2.0 * half;
  const double edge = 0.5 * length - d_rev;
  const double amp = v * t_rev / pi;
  const double w = pi / t_rev;

  double u = std::fmod(tau + 0.5 * t_rev, period);
  double sign = -1.0;  // -1: reversal at the negative end, then cruise +
  if (u >= half) {
    u -= half;
    sign = 1.0;
  }
  if (u < t_rev) {
    return {sign * edge + sign * amp * std::sin(w * u),
            sign * v * std::cos(w * u),
            -sign * v * w * std::sin(w * u)};
  }
  u -= t_rev;
  return {sign * edge - sign * v * u, -sign * v, 0.0};
}

}  // namespace

TrajectorySample gen_trajectory(const TrajectoryParams& params, double t) {
  TrajectorySample out;
  out.yaw = wrap_angle(params.yaw);
  const bool moving = t >= params.start_s;
  const double tau = moving ? t - params.start_s : 0.0;

  switch (params.kind) {
    case TrajectoryKind::kSetpoint:
      out.p_d = params.center;
      break;
    case TrajectoryKind::kCircle: {
      const double r = 0.5 * params.diameter;
      const double w = params.speed / r;
      const double th = w * tau;
      const Vec3 radial(std::cos(th), std::sin(th), 0.0);
      const Vec3 tangent(-std::sin(th), std::cos(th), 0.0);
      out.p_d = params.center + r * radial;
      out.v_d = r * w * tangent;
      out.a_d = -r * w * w * radial;
      break;
    }
    case TrajectoryKind::kLemniscate: {
      const double a = params.lemniscate_a;
      const double b = params.lemniscate_b;
      // |v| peaks at th = 0 where both components of dp/dth are maximal.
      const double w = params.speed / std::hypot(a, b);
      const double th = w * tau;
      out.p_d = params.center +
                Vec3(a * std::sin(th), 0.5 * b * std::sin(2.0 * th), 0.0);
      out.v_d = w * Vec3(a * std::cos(th), b * std::cos(2.0 * th), 0.0);
      out.a_d = w * w * Vec3(-a * std::sin(th), -2.0 * b * std::sin(2.0 * th), 0.0);
      break;
    }
    case TrajectoryKind::kLineScan: {
      const Vec3 dir = params.axis.normalized();
      const Scalar s =
          line_scan_profile(params.speed, params.max_accel, params.length, tau);
      out.p_d = params.center + s.s * dir;
      out.v_d = s.ds * dir;
      out.a_d = s.dds * dir;
      break;
    }
  }
  if (!moving) {
    out.v_d.setZero();
    out.a_d.setZero();
  }
  return out;
}

}  // namespace amctl
