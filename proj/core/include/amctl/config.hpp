#pragma once

// Scenario configuration: a YAML key/value tree with sections
//
//   core       physics_rate_hz
//   quad       airframe mass/inertia/limits/rate loop
//   arm        delta geometry, joint limits, payload
//   servo      servo lag and rate limit
//   imu        accelerometer noise
//   observers  observer gain, filter cutoffs, sensor/control rates
//   control    gains and limits
//   wind       disturbance model
//   scenario   kind, duration, seed, ablation, references
//
// Every key is optional; missing keys keep the defaults of the chosen
// scenario kind. Unknown keys are rejected. See configs/ for examples.

#include <optional>
#include <string>
#include <string_view>

#include <yaml-cpp/yaml.h>

#include "amctl/controllers.hpp"
#include "amctl/delta_kinematics.hpp"
#include "amctl/observers.hpp"
#include "amctl/plant.hpp"
#include "amctl/trajectory.hpp"

namespace amctl {

enum class ScenarioKind {
  kDisturbanceRejection,
  kTrajectoryCompensation,
  kEeStabilization,
  kCustom,
};

enum class MassMode { kTotal, kBase };

/// Which end-effector velocity is differentiated for the high-frequency
/// force estimate.
enum class HighFrequencyFrame {
  kWorld,     // world velocity; includes the airframe's own acceleration
  kRelative,  // world-frame velocity relative to the body origin
  kArm,       // arm-frame velocity relative to the mount
};

/// How the arm reference is produced.
enum class ArmMode {
  kArmFrame,    // arm_trajectory, expressed in the arm frame
  kHoldWorld,   // hold a fixed world point
  kTrackWorld,  // follow the quad reference shifted by the nominal arm offset
};

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(CompensationMode mode);
std::string_view to_string(ArmMode mode);
std::string_view to_string(HighFrequencyFrame frame);
ScenarioKind scenario_kind_from_string(std::string_view name);
CompensationMode ablation_from_string(std::string_view name);

struct ObserverSettings {
  double ndob_c = 13.822;
  MassMode mass_mode = MassMode::kTotal;
  double butter_cutoff_hz = 50.0;
  std::optional<double> hp_cutoff_hz;  // default: matched to the observer
  HighFrequencyFrame hf_frame = HighFrequencyFrame::kArm;
  double sensor_rate_hz = 1000.0;
  double control_rate_hz = 100.0;
};

struct ScenarioSettings {
  ScenarioKind kind = ScenarioKind::kCustom;
  double duration_s = 10.0;
  std::uint64_t seed = 1;
  CompensationMode ablation = CompensationMode::kFull;
  double metrics_start_s = 0.0;
  TrajectoryParams quad_trajectory;
  ArmMode arm_mode = ArmMode::kArmFrame;
  TrajectoryParams arm_trajectory;
  /// Nominal end-effector point in the arm frame.
  Vec3 arm_home{0.0, 0.0, -0.16};
  /// World hold point for kHoldWorld; default is below the quad reference's
  /// center at the nominal arm offset.
  std::optional<Vec3> hold_point;
};

struct ScenarioConfig {
  double physics_rate_hz = 1000.0;
  QuadParams quad;
  DeltaGeometry arm;
  ImuModel imu;
  ObserverSettings observers;
  Gains control;
  bool rate_feedforward = false;
  WindModel wind;
  ScenarioSettings scenario;

  /// Throws Error(kConfig) describing the first violated constraint.
  void validate() const;

  double observer_mass() const;
  double hp_cutoff_hz() const;
};

/// Defaults of a scenario kind before any file overrides.
ScenarioConfig default_config(ScenarioKind kind);

/// Parses a YAML tree. Throws Error(kConfig).
ScenarioConfig config_from_yaml(const YAML::Node& root);
ScenarioConfig load_config(const std::string& path);

/// Sets `a.b.c` in a YAML tree, creating maps as needed.
void set_dotted(YAML::Node root, std::string_view dotted_key, const YAML::Node& value);

/// Normalized YAML for echoing a configuration back.
YAML::Node config_to_yaml(const ScenarioConfig& cfg);

}  // namespace amctl
