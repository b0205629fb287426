#pragma once

#include <functional>
#include <string>
#include <vector>

#include "amctl/config.hpp"
#include "amctl/metrics.hpp"

namespace amctl {

/// One control tick. Column order of the telemetry CSV follows the fields.
struct TelemetryRow {
  double t = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec3 ypr = Vec3::Zero();  // yaw, pitch, roll
  JointVec q = JointVec::Zero();
  Vec3 ee = Vec3::Zero();   // end-effector, world
  Vec3 f_low = Vec3::Zero();
  Vec3 f_high = Vec3::Zero();
  Vec3 f_ext = Vec3::Zero();  // applied by the plant
  double t_spec = 0.0;
  Vec3 omega_d = Vec3::Zero();
};

struct ScenarioResult {
  ScenarioKind kind = ScenarioKind::kCustom;
  CompensationMode ablation = CompensationMode::kFull;
  std::uint64_t seed = 0;
  double duration_s = 0.0;

  MetricsReport quad;     // airframe vs its reference
  MetricsReport ee;       // end-effector vs its reference
  MetricsReport primary;  // the one the scenario is judged by
  bool primary_is_ee = false;

  std::vector<TelemetryRow> telemetry;
  // Sampled at control ticks from metrics_start_s on.
  std::vector<Vec3> quad_error;
  std::vector<Vec3> ee_error;
  std::vector<Vec3> estimate_error;  // f_low + f_high - f_ext
  std::vector<Vec3> f_ext;

  int arm_saturated_ticks = 0;
  int arm_singular_ticks = 0;
  int workspace_clamped_ticks = 0;

  double runtime_s = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

using TelemetrySink = std::function<void(const TelemetryRow&)>;

/// Closed-loop run: plant at physics rate, observer at sensor rate, control
/// and arm loops at control rate (zero-order hold). Numerical failures end
/// the run early with `aborted` set and the telemetry recorded so far.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const TelemetrySink& sink = {});

/// Pulls an arm-frame target back toward `home` until the arm can reach it.
/// Returns true when the point had to move.
bool clamp_to_workspace(Vec3& p_arm, const Vec3& home, const DeltaGeometry& geom);

/// World point the end-effector sits at when the vehicle is at `p` with
/// heading `yaw` and the arm is at `home`.
Vec3 nominal_end_effector(const Vec3& p, double yaw, const Vec3& home,
                          const DeltaGeometry& geom);

}  // namespace amctl
