#include "amctl/scenario.hpp"

#include <chrono>
#include <cmath>

#include "amctl/error.hpp"

namespace amctl {

namespace {

bool reachable(const Vec3& p, const DeltaGeometry& geom) {
  try {
    inverse_position(p, geom);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

bool clamp_to_workspace(Vec3& p_arm, const Vec3& home, const DeltaGeometry& geom) {
  if (reachable(p_arm, geom)) return false;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reachable(home + mid * (p_arm - home), geom)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  p_arm = home + lo * (p_arm - home);
  return true;
}

Vec3 nominal_end_effector(const Vec3& p, double yaw, const Vec3& home,
                          const DeltaGeometry& geom) {
  return p + rot_z(yaw) * arm_to_body(home, geom);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const TelemetrySink& sink) {
  cfg.validate();
  const auto wall_start = std::chrono::steady_clock::now();
  const ScenarioSettings& sc = cfg.scenario;
  const DeltaGeometry& geom = cfg.arm;

  ScenarioResult res;
  res.kind = sc.kind;
  res.ablation = sc.ablation;
  res.seed = sc.seed;
  res.duration_s = sc.duration_s;
  res.primary_is_ee = sc.kind == ScenarioKind::kTrajectoryCompensation ||
                      sc.kind == ScenarioKind::kEeStabilization;

  const double dt_phys = 1.0 / cfg.physics_rate_hz;
  const double dt_ctrl = 1.0 / cfg.observers.control_rate_hz;
  const double dt_sens = 1.0 / cfg.observers.sensor_rate_hz;
  const int phys_per_ctrl =
      static_cast<int>(std::lround(cfg.physics_rate_hz / cfg.observers.control_rate_hz));
  const int phys_per_sens =
      static_cast<int>(std::lround(cfg.physics_rate_hz / cfg.observers.sensor_rate_hz));
  const long ticks = std::lround(sc.duration_s * cfg.observers.control_rate_hz);

  const double m_obs = cfg.observer_mass();
  NdobState ndob(NdobConfig{cfg.observers.ndob_c, m_obs, cfg.observers.sensor_rate_hz,
                            cfg.observers.butter_cutoff_hz});
  ndob.reset();
  HighFrequencyEstimator hf(cfg.hp_cutoff_hz(), cfg.quad.m_payload);
  QuadController controller(cfg.control, sc.ablation, m_obs);

  const Vec3 hold_point = sc.hold_point.value_or(nominal_end_effector(
      sc.quad_trajectory.center, sc.quad_trajectory.yaw, sc.arm_home, geom));

  // Arm reference for the current tick, in the arm frame, plus the world
  // point the end-effector is meant to be at (arm-frame modes use the
  // arm-frame point directly).
  struct ArmRef {
    Vec3 p_arm, v_arm, p_world;
  };
  // Body rate the vehicle would have flying the reference exactly, from the
  // flat attitude at t and t + dt.
  const auto reference_rate = [&](double t) -> Vec3 {
    if (!cfg.control.arm_reference_rate_ff) return Vec3::Zero();
    const auto flat_at = [&](double tt) {
      const TrajectorySample s = gen_trajectory(sc.quad_trajectory, tt);
      QuadState q;
      q.v = s.v_d;
      return flatness_attitude_thrust(s.a_d, s.yaw, q, cfg.control).R_des;
    };
    const Eigen::AngleAxisd step(flat_at(t).transpose() * flat_at(t + dt_ctrl));
    return step.angle() / dt_ctrl * step.axis();
  };
  const auto arm_reference = [&](double t, const TrajectorySample& ref,
                                 const QuadState& quad) {
    ArmRef out;
    switch (sc.arm_mode) {
      case ArmMode::kArmFrame: {
        const TrajectorySample s = gen_trajectory(sc.arm_trajectory, t);
        out.p_arm = s.p_d;
        out.v_arm = s.v_d;
        out.p_world = s.p_d;
        return out;
      }
      case ArmMode::kHoldWorld:
        out.p_world = hold_point;
        break;
      case ArmMode::kTrackWorld:
        out.p_world = nominal_end_effector(ref.p_d, ref.yaw, sc.arm_home, geom);
        break;
    }
    const Vec3 v_world = sc.arm_mode == ArmMode::kTrackWorld ? ref.v_d : Vec3::Zero();
    // The measured rate would make the arm chase attitude jitter.
    QuadState q_ff = quad;
    q_ff.omega = reference_rate(t);
    const ArmTarget target = world_to_arm_target(q_ff, out.p_world, v_world, geom);
    out.p_arm = target.p_arm;
    out.v_arm = target.v_arm;
    return out;
  };

  Plant plant(cfg.quad, geom, cfg.wind, cfg.imu, sc.seed);
  {
    const TrajectorySample ref0 = gen_trajectory(sc.quad_trajectory, 0.0);
    QuadState q0;
    q0.p = ref0.p_d;
    q0.v = ref0.v_d;
    q0.R = rot_z(ref0.yaw);
    ArmRef a0 = arm_reference(0.0, ref0, q0);
    clamp_to_workspace(a0.p_arm, sc.arm_home, geom);
    ArmState arm0;
    arm0.q = inverse_position(a0.p_arm, geom);
    plant.set_state(q0, arm0);
  }

  res.telemetry.reserve(static_cast<std::size_t>(ticks));
  Vec3 f_low = Vec3::Zero();
  try {
    for (long k = 0; k < ticks; ++k) {
      const double t = static_cast<double>(k) * dt_ctrl;
      const QuadState quad = plant.quad();
      const ArmState arm = plant.arm();
      const TrajectorySample ref = gen_trajectory(sc.quad_trajectory, t);

      // Servo feedback gives q and q_dot; the end-effector follows.
      const Vec3 p_arm = forward_position(arm.q, geom);
      const Vec3 v_arm = forward_velocity(arm_jacobians(arm.q, p_arm, geom), arm.q_dot, geom);
      const EndEffectorState ee = compose_world(quad, p_arm, v_arm, geom);

      const RotMat r_world_arm = quad.R * geom.r_mount;
      const Vec3 lever = arm_to_body(p_arm, geom);
      HighFrequencyEstimate high;
      switch (cfg.observers.hf_frame) {
        case HighFrequencyFrame::kWorld:
          high = hf.step_world(ee.v_world, quad.R, lever, dt_ctrl);
          break;
        case HighFrequencyFrame::kRelative:
          high = hf.step_world(ee.v_world - quad.v, quad.R, lever, dt_ctrl);
          break;
        case HighFrequencyFrame::kArm:
          high = hf.step(v_arm, r_world_arm, quad.R, lever, dt_ctrl);
          break;
      }

      AttitudeThrustCmd cmd = controller.update(ref, quad, f_low, high.f_high, dt_ctrl);
      Vec3 omega_d = cmd.omega_d;
      if (cfg.rate_feedforward && sc.ablation == CompensationMode::kFull) {
        omega_d -= high.tau_high / cfg.quad.rate_gain;
      }

      ArmRef aref = arm_reference(t, ref, quad);
      if (clamp_to_workspace(aref.p_arm, sc.arm_home, geom)) {
        aref.v_arm.setZero();
        ++res.workspace_clamped_ticks;
      }
      const ArmCommand arm_cmd =
          arm_velocity_command(aref.p_arm, aref.v_arm, arm, geom, cfg.control);
      res.arm_saturated_ticks += arm_cmd.saturated ? 1 : 0;
      res.arm_singular_ticks += arm_cmd.singular ? 1 : 0;

      TelemetryRow row;
      row.t = t;
      row.p = quad.p;
      row.v = quad.v;
      row.ypr = yaw_pitch_roll(quad.R);
      row.q = arm.q;
      row.ee = ee.p_world;
      row.f_low = f_low;
      row.f_high = high.f_high;
      row.f_ext = plant.last().f_ext;
      row.t_spec = cmd.T_spec;
      row.omega_d = omega_d;
      res.telemetry.push_back(row);
      if (sink) sink(row);

      if (t >= sc.metrics_start_s) {
        res.quad_error.push_back(quad.p - ref.p_d);
        res.ee_error.push_back(sc.arm_mode == ArmMode::kArmFrame ? p_arm - aref.p_world
                                                                 : ee.p_world - aref.p_world);
        res.estimate_error.push_back(row.f_low + row.f_high - row.f_ext);
        res.f_ext.push_back(row.f_ext);
      }

      for (int s = 0; s < phys_per_ctrl; ++s) {
        const PlantStep& step = plant.step(cmd.T_spec, omega_d, arm_cmd.q_dot, dt_phys);
        if ((s + 1) % phys_per_sens == 0) {
          f_low = ndob.ndob_step(step.a_meas, step.t_spec, plant.quad().R, dt_sens);
        }
      }
      if (!plant.quad().finite() || plant.quad().p.norm() > 1e4) {
        throw Error(ErrorCode::kNonFinite, "scenario: vehicle state diverged");
      }
    }
  } catch (const Error& e) {
    res.aborted = true;
    res.abort_reason = e.what();
  }

  if (!res.quad_error.empty()) {
    res.quad = compute_metrics(res.quad_error);
    res.ee = compute_metrics(res.ee_error);
    res.primary = res.primary_is_ee ? res.ee : res.quad;
  }
  res.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return res;
}

}  // namespace amctl
