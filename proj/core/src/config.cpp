#include "amctl/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "amctl/error.hpp"

namespace amctl {

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kConfig, msg);
}

// Reads keys out of one YAML map and remembers which were consumed so
// typos are reported instead of silently ignored.
class Section {
 public:
  Section(const YAML::Node& node, std::string name)
      : node_(node), name_(std::move(name)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      config_error("section '" + name_ + "' must be a map");
    }
  }

  bool has(const char* key) const { return node_ && node_[key]; }

  YAML::Node raw(const char* key) {
    used_.insert(key);
    return node_ ? node_[key] : YAML::Node();
  }

  template <class T>
  void get(const char* key, T& out) {
    if (!has(key)) return;
    used_.insert(key);
    try {
      out = node_[key].as<T>();
    } catch (const YAML::Exception&) {
      config_error(path(key) + ": wrong type");
    }
  }

  void get(const char* key, Vec3& out) {
    if (!has(key)) return;
    used_.insert(key);
    const YAML::Node n = node_[key];
    try {
      if (n.IsScalar()) {
        out = Vec3::Constant(n.as<double>());
      } else if (n.IsSequence() && n.size() == 3) {
        out = Vec3(n[0].as<double>(), n[1].as<double>(), n[2].as<double>());
      } else {
        config_error(path(key) + ": expected a number or a 3-element list");
      }
    } catch (const YAML::Exception&) {
      config_error(path(key) + ": expected numbers");
    }
  }

  std::string get_string(const char* key, const std::string& fallback) {
    std::string s = fallback;
    get(key, s);
    return s;
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.contains(key)) config_error("unknown key '" + path(key) + "'");
    }
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

 private:
  YAML::Node node_;
  std::string name_;
  std::set<std::string> used_;
};

MassMode mass_mode_from_string(const std::string& s) {
  if (s == "total") return MassMode::kTotal;
  if (s == "base") return MassMode::kBase;
  config_error("observers.ndob_mass_mode must be total|base, got '" + s + "'");
}

WindKind wind_kind_from_string(const std::string& s) {
  if (s == "none") return WindKind::kNone;
  if (s == "constant") return WindKind::kConstant;
  if (s == "step") return WindKind::kStep;
  if (s == "sine") return WindKind::kSine;
  if (s == "gust_mix") return WindKind::kGustMix;
  config_error("wind.kind must be none|constant|step|sine|gust_mix, got '" + s + "'");
}

std::string_view to_string(WindKind k) {
  switch (k) {
    case WindKind::kNone: return "none";
    case WindKind::kConstant: return "constant";
    case WindKind::kStep: return "step";
    case WindKind::kSine: return "sine";
    case WindKind::kGustMix: return "gust_mix";
  }
  return "none";
}

ArmMode arm_mode_from_string(const std::string& s) {
  if (s == "arm_frame") return ArmMode::kArmFrame;
  if (s == "hold_world") return ArmMode::kHoldWorld;
  if (s == "track_world") return ArmMode::kTrackWorld;
  config_error("scenario.arm_mode must be arm_frame|hold_world|track_world, got '" +
               s + "'");
}

void read_trajectory(const YAML::Node& node, const std::string& name,
                     TrajectoryParams& t) {
  Section s(node, name);
  if (s.has("kind")) {
    try {
      t.kind = trajectory_kind_from_string(s.get_string("kind", ""));
    } catch (const Error& e) {
      config_error(name + ".kind: " + e.what());
    }
  }
  s.get("center", t.center);
  s.get("start_s", t.start_s);
  s.get("yaw", t.yaw);
  s.get("diameter", t.diameter);
  s.get("speed", t.speed);
  s.get("a", t.lemniscate_a);
  s.get("b", t.lemniscate_b);
  s.get("axis", t.axis);
  s.get("length", t.length);
  s.get("max_accel", t.max_accel);
  s.finish();
}

YAML::Node vec_node(const Vec3& v) {
  YAML::Node n(YAML::NodeType::Sequence);
  n.SetStyle(YAML::EmitterStyle::Flow);
  n.push_back(v.x());
  n.push_back(v.y());
  n.push_back(v.z());
  return n;
}

YAML::Node trajectory_node(const TrajectoryParams& t) {
  YAML::Node n;
  n["kind"] = std::string(to_string(t.kind));
  n["center"] = vec_node(t.center);
  n["start_s"] = t.start_s;
  n["yaw"] = t.yaw;
  n["diameter"] = t.diameter;
  n["speed"] = t.speed;
  n["a"] = t.lemniscate_a;
  n["b"] = t.lemniscate_b;
  n["axis"] = vec_node(t.axis);
  n["length"] = t.length;
  n["max_accel"] = t.max_accel;
  return n;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kDisturbanceRejection: return "disturbance_rejection";
    case ScenarioKind::kTrajectoryCompensation: return "trajectory_compensation";
    case ScenarioKind::kEeStabilization: return "ee_stabilization";
    case ScenarioKind::kCustom: return "custom";
  }
  return "custom";
}

std::string_view to_string(CompensationMode mode) {
  switch (mode) {
    case CompensationMode::kBaseline: return "baseline";
    case CompensationMode::kNdobOnly: return "ndob_only";
    case CompensationMode::kFull: return "full";
  }
  return "full";
}

std::string_view to_string(HighFrequencyFrame frame) {
  switch (frame) {
    case HighFrequencyFrame::kWorld: return "world";
    case HighFrequencyFrame::kRelative: return "relative";
    case HighFrequencyFrame::kArm: return "arm";
  }
  return "arm";
}

std::string_view to_string(ArmMode mode) {
  switch (mode) {
    case ArmMode::kArmFrame: return "arm_frame";
    case ArmMode::kHoldWorld: return "hold_world";
    case ArmMode::kTrackWorld: return "track_world";
  }
  return "arm_frame";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  if (name == "disturbance_rejection") return ScenarioKind::kDisturbanceRejection;
  if (name == "trajectory_compensation") return ScenarioKind::kTrajectoryCompensation;
  if (name == "ee_stabilization") return ScenarioKind::kEeStabilization;
  if (name == "custom") return ScenarioKind::kCustom;
  config_error("scenario.kind must be disturbance_rejection|trajectory_compensation|"
               "ee_stabilization|custom, got '" + std::string(name) + "'");
}

CompensationMode ablation_from_string(std::string_view name) {
  if (name == "baseline") return CompensationMode::kBaseline;
  if (name == "ndob_only") return CompensationMode::kNdobOnly;
  if (name == "full") return CompensationMode::kFull;
  config_error("ablation must be baseline|ndob_only|full, got '" + std::string(name) +
               "'");
}

double ScenarioConfig::observer_mass() const {
  return observers.mass_mode == MassMode::kTotal ? quad.total_mass() : quad.m_base;
}

double ScenarioConfig::hp_cutoff_hz() const {
  return observers.hp_cutoff_hz.value_or(
      matched_highpass_cutoff(observers.ndob_c, observer_mass()));
}

void ScenarioConfig::validate() const {
  try {
    quad.validate();
    arm.validate();
    wind.validate();
    control.validate();
    scenario.quad_trajectory.validate();
    scenario.arm_trajectory.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  const auto is_multiple = [](double fast, double slow) {
    const double ratio = fast / slow;
    return ratio >= 1.0 && std::abs(ratio - std::round(ratio)) < 1e-9;
  };
  if (!(physics_rate_hz > 0.0)) config_error("core.physics_rate_hz must be > 0");
  if (!(observers.sensor_rate_hz > 0.0 && observers.control_rate_hz > 0.0)) {
    config_error("observers: rates must be > 0");
  }
  if (!is_multiple(physics_rate_hz, observers.sensor_rate_hz)) {
    config_error("observers.sensor_rate_hz must divide core.physics_rate_hz");
  }
  if (!is_multiple(physics_rate_hz, observers.control_rate_hz)) {
    config_error("observers.control_rate_hz must divide core.physics_rate_hz");
  }
  if (!(observers.ndob_c > 0.0)) config_error("observers.ndob_c must be > 0");
  if (!(observers.butter_cutoff_hz > 0.0 &&
        observers.butter_cutoff_hz < 0.5 * observers.sensor_rate_hz)) {
    config_error("observers.butter_cutoff_hz must lie in (0, sensor_rate_hz/2)");
  }
  if (observers.hp_cutoff_hz && !(*observers.hp_cutoff_hz > 0.0 &&
                                  *observers.hp_cutoff_hz < 0.5 * observers.control_rate_hz)) {
    config_error("observers.hp_cutoff_hz must lie in (0, control_rate_hz/2)");
  }
  if (!(scenario.duration_s > 0.0)) config_error("scenario.duration_s must be > 0");
  if (!(scenario.metrics_start_s >= 0.0 &&
        scenario.metrics_start_s < scenario.duration_s)) {
    config_error("scenario.metrics_start_s must lie in [0, duration_s)");
  }
  if (!scenario.arm_home.allFinite() || !(scenario.arm_home.z() < 0.0)) {
    config_error("scenario.arm_home must be finite with negative z");
  }
  try {
    inverse_position(scenario.arm_home, arm);
  } catch (const Error& e) {
    config_error(std::string("scenario.arm_home is not reachable: ") + e.what());
  }
}

ScenarioConfig default_config(ScenarioKind kind) {
  ScenarioConfig cfg;
  auto& sc = cfg.scenario;
  sc.kind = kind;
  sc.arm_trajectory.kind = TrajectoryKind::kSetpoint;
  sc.arm_trajectory.center = sc.arm_home;
  switch (kind) {
    case ScenarioKind::kDisturbanceRejection:
      sc.duration_s = 20.0;
      sc.metrics_start_s = 5.0;
      cfg.quad.m_payload = 0.4;
      sc.arm_mode = ArmMode::kArmFrame;
      sc.arm_trajectory.kind = TrajectoryKind::kLineScan;
      sc.arm_trajectory.speed = 0.10;
      sc.arm_trajectory.length = 0.08;
      sc.arm_trajectory.max_accel = 0.3 * kGravityMagnitude;
      sc.arm_trajectory.start_s = 2.0;
      break;
    case ScenarioKind::kTrajectoryCompensation:
      sc.duration_s = 30.0;
      sc.metrics_start_s = 5.0;
      cfg.quad.m_payload = 0.2;
      sc.quad_trajectory.kind = TrajectoryKind::kLemniscate;
      sc.quad_trajectory.lemniscate_a = 2.0;
      sc.quad_trajectory.lemniscate_b = 1.0;
      sc.quad_trajectory.speed = 1.5;
      sc.arm_mode = ArmMode::kTrackWorld;
      cfg.wind.kind = WindKind::kGustMix;
      cfg.wind.f_const = Vec3(0.0, 0.4, 0.0);
      cfg.wind.amplitude = Vec3(0.0, 0.2, 0.0);
      cfg.wind.freq_hz = 0.3;
      break;
    case ScenarioKind::kEeStabilization:
      sc.duration_s = 20.0;
      sc.metrics_start_s = 5.0;
      cfg.quad.m_payload = 0.2;
      sc.quad_trajectory.kind = TrajectoryKind::kCircle;
      sc.quad_trajectory.diameter = 0.12;
      sc.quad_trajectory.speed = 0.05;
      sc.arm_mode = ArmMode::kHoldWorld;
      break;
    case ScenarioKind::kCustom:
      sc.duration_s = 10.0;
      break;
  }
  cfg.observers.ndob_c = 10.0 * cfg.observer_mass();
  return cfg;
}

ScenarioConfig config_from_yaml(const YAML::Node& root) {
  if (root && !root.IsNull() && !root.IsMap()) config_error("config root must be a map");

  ScenarioKind kind = ScenarioKind::kCustom;
  if (root["scenario"] && root["scenario"]["kind"]) {
    kind = scenario_kind_from_string(root["scenario"]["kind"].as<std::string>());
  }
  ScenarioConfig cfg = default_config(kind);

  static const std::set<std::string> kSections = {
      "core", "quad", "arm", "servo", "imu", "observers", "control", "wind", "scenario"};
  for (const auto& kv : root) {
    const auto name = kv.first.as<std::string>();
    if (!kSections.contains(name)) config_error("unknown section '" + name + "'");
  }

  {
    Section s(root["core"], "core");
    s.get("physics_rate_hz", cfg.physics_rate_hz);
    s.finish();
  }
  {
    Section s(root["quad"], "quad");
    auto& q = cfg.quad;
    s.get("mass_base", q.m_base);
    s.get("mass_arm", q.m_arm);
    s.get("inertia", q.inertia);
    s.get("rotor_drag", q.d_z);
    s.get("thrust_min", q.thrust_min);
    s.get("thrust_max", q.thrust_max);
    s.get("rate_limit", q.rate_limit);
    s.get("rate_gain", q.rate_gain);
    s.get("rate_integral_gain", q.rate_integral_gain);
    s.get("rate_integral_limit", q.rate_integral_limit);
    s.finish();
  }
  {
    Section s(root["arm"], "arm");
    auto& g = cfg.arm;
    s.get("l_upper", g.l_upper);
    s.get("l_lower", g.l_lower);
    s.get("r_base", g.r_base);
    s.get("r_eff", g.r_eff);
    s.get("mount_xyz", g.p_mount);
    if (s.has("mount_rpy")) {
      Vec3 rpy = Vec3::Zero();
      s.get("mount_rpy", rpy);
      g.r_mount = rot_z(rpy.z()) * rot_y(rpy.y()) * rot_x(rpy.x());
    }
    if (s.has("joint_limits")) {
      const YAML::Node lim = s.raw("joint_limits");
      if (!lim.IsSequence() || lim.size() != 2) {
        config_error("arm.joint_limits must be [q_min, q_max]");
      }
      g.q_min = lim[0].as<double>();
      g.q_max = lim[1].as<double>();
    }
    if (s.has("chain_azimuths_deg")) {
      Vec3 az = Vec3::Zero();
      s.get("chain_azimuths_deg", az);
      for (int i = 0; i < 3; ++i) g.chain_azimuth[i] = az[i] * std::numbers::pi / 180.0;
    }
    s.get("singular_v_tol", g.singular_v_tol);
    s.get("max_cond_m", g.max_cond_m);
    s.get("payload_kg", cfg.quad.m_payload);
    s.finish();
  }
  {
    Section s(root["servo"], "servo");
    s.get("tau", cfg.quad.servo_tau);
    s.get("rate_limit", cfg.quad.servo_rate_limit);
    s.finish();
  }
  {
    Section s(root["imu"], "imu");
    s.get("accel_noise_std", cfg.imu.accel_noise_std);
    s.finish();
  }
  {
    Section s(root["observers"], "observers");
    auto& o = cfg.observers;
    o.mass_mode = mass_mode_from_string(s.get_string(
        "ndob_mass_mode", o.mass_mode == MassMode::kTotal ? "total" : "base"));
    // Keep c / m at the default bandwidth unless c is given explicitly.
    o.ndob_c = 10.0 * cfg.observer_mass();
    s.get("ndob_c", o.ndob_c);
    s.get("butter_cutoff_hz", o.butter_cutoff_hz);
    if (s.has("hp_cutoff_hz")) {
      double hp = 0.0;
      s.get("hp_cutoff_hz", hp);
      o.hp_cutoff_hz = hp;
    }
    const std::string frame = s.get_string("hf_frame", std::string(to_string(o.hf_frame)));
    if (frame == "world") {
      o.hf_frame = HighFrequencyFrame::kWorld;
    } else if (frame == "relative") {
      o.hf_frame = HighFrequencyFrame::kRelative;
    } else if (frame == "arm") {
      o.hf_frame = HighFrequencyFrame::kArm;
    } else {
      config_error("observers.hf_frame must be world|relative|arm");
    }
    s.get("sensor_rate_hz", o.sensor_rate_hz);
    s.get("control_rate_hz", o.control_rate_hz);
    s.finish();
  }
  {
    Section s(root["control"], "control");
    auto& c = cfg.control;
    s.get("kpp", c.kpp);
    s.get("kvp", c.kvp);
    s.get("kvi", c.kvi);
    s.get("kvd", c.kvd);
    s.get("integral_limit", c.integral_limit);
    s.get("derivative_cutoff_hz", c.derivative_cutoff_hz);
    s.get("kp_arm", c.kp_arm);
    s.get("kd_arm", c.kd_arm);
    s.get("arm_reference_rate_ff", c.arm_reference_rate_ff);
    s.get("k_att", c.k_att);
    s.get("d_z", c.d_z);
    s.get("jerk_feedforward", c.jerk_feedforward);
    s.get("jerk_cutoff_hz", c.jerk_cutoff_hz);
    s.get("rate_feedforward", cfg.rate_feedforward);
    const std::string proj = s.get_string(
        "thrust_projection",
        c.thrust_projection == ThrustProjection::kCurrent ? "current" : "desired");
    if (proj == "current") {
      c.thrust_projection = ThrustProjection::kCurrent;
    } else if (proj == "desired") {
      c.thrust_projection = ThrustProjection::kDesired;
    } else {
      config_error("control.thrust_projection must be current|desired");
    }
    s.finish();
  }
  {
    Section s(root["wind"], "wind");
    auto& w = cfg.wind;
    w.kind = wind_kind_from_string(s.get_string("kind", std::string(to_string(w.kind))));
    s.get("force", w.f_const);
    s.get("amplitude", w.amplitude);
    s.get("freq_hz", w.freq_hz);
    s.get("t_step", w.t_step);
    s.finish();
  }
  {
    Section s(root["scenario"], "scenario");
    auto& sc = cfg.scenario;
    s.get_string("kind", "");
    s.get("duration_s", sc.duration_s);
    s.get("seed", sc.seed);
    if (s.has("ablation")) sc.ablation = ablation_from_string(s.get_string("ablation", ""));
    s.get("metrics_start_s", sc.metrics_start_s);
    const Vec3 old_home = sc.arm_home;
    s.get("arm_home", sc.arm_home);
    if (sc.arm_trajectory.center == old_home) sc.arm_trajectory.center = sc.arm_home;
    if (s.has("arm_mode")) sc.arm_mode = arm_mode_from_string(s.get_string("arm_mode", ""));
    if (s.has("hold_point")) {
      Vec3 hp = Vec3::Zero();
      s.get("hold_point", hp);
      sc.hold_point = hp;
    }
    if (s.has("quad_trajectory")) {
      read_trajectory(s.raw("quad_trajectory"), "scenario.quad_trajectory",
                      sc.quad_trajectory);
    }
    if (s.has("arm_trajectory")) {
      read_trajectory(s.raw("arm_trajectory"), "scenario.arm_trajectory",
                      sc.arm_trajectory);
    }
    s.finish();
  }

  // The controller shares the airframe's thrust/rate limits and the servo
  // rate limit.
  cfg.control.thrust_min = cfg.quad.thrust_min;
  cfg.control.thrust_max = cfg.quad.thrust_max;
  cfg.control.rate_limit = cfg.quad.rate_limit;
  cfg.control.servo_rate_limit = cfg.quad.servo_rate_limit;

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    config_error("cannot open config file '" + path + "'");
  } catch (const YAML::Exception& e) {
    config_error("cannot parse '" + path + "': " + e.what());
  }
  return config_from_yaml(root);
}

void set_dotted(YAML::Node root, std::string_view dotted_key, const YAML::Node& value) {
  const auto dot = dotted_key.find('.');
  const std::string head(dotted_key.substr(0, dot));
  if (dot == std::string_view::npos) {
    root[head] = value;
    return;
  }
  YAML::Node child = root[head];
  if (!child || child.IsNull()) {
    root[head] = YAML::Node(YAML::NodeType::Map);
    child = root[head];
  }
  set_dotted(child, dotted_key.substr(dot + 1), value);
}

YAML::Node config_to_yaml(const ScenarioConfig& cfg) {
  YAML::Node root;
  root["core"]["physics_rate_hz"] = cfg.physics_rate_hz;

  auto quad = root["quad"];
  quad["mass_base"] = cfg.quad.m_base;
  quad["mass_arm"] = cfg.quad.m_arm;
  quad["inertia"] = vec_node(cfg.quad.inertia);
  quad["rotor_drag"] = cfg.quad.d_z;
  quad["thrust_min"] = cfg.quad.thrust_min;
  quad["thrust_max"] = cfg.quad.thrust_max;
  quad["rate_limit"] = cfg.quad.rate_limit;
  quad["rate_gain"] = cfg.quad.rate_gain;
  quad["rate_integral_gain"] = cfg.quad.rate_integral_gain;
  quad["rate_integral_limit"] = cfg.quad.rate_integral_limit;

  auto arm = root["arm"];
  arm["l_upper"] = cfg.arm.l_upper;
  arm["l_lower"] = cfg.arm.l_lower;
  arm["r_base"] = cfg.arm.r_base;
  arm["r_eff"] = cfg.arm.r_eff;
  arm["mount_xyz"] = vec_node(cfg.arm.p_mount);
  const Vec3 ypr = yaw_pitch_roll(cfg.arm.r_mount);
  arm["mount_rpy"] = vec_node(Vec3(ypr.z(), ypr.y(), ypr.x()));
  YAML::Node lim(YAML::NodeType::Sequence);
  lim.SetStyle(YAML::EmitterStyle::Flow);
  lim.push_back(cfg.arm.q_min);
  lim.push_back(cfg.arm.q_max);
  arm["joint_limits"] = lim;
  arm["chain_azimuths_deg"] =
      vec_node(Vec3(cfg.arm.chain_azimuth[0], cfg.arm.chain_azimuth[1],
                    cfg.arm.chain_azimuth[2]) * 180.0 / std::numbers::pi);
  arm["singular_v_tol"] = cfg.arm.singular_v_tol;
  arm["max_cond_m"] = cfg.arm.max_cond_m;
  arm["payload_kg"] = cfg.quad.m_payload;

  root["servo"]["tau"] = cfg.quad.servo_tau;
  root["servo"]["rate_limit"] = cfg.quad.servo_rate_limit;
  root["imu"]["accel_noise_std"] = cfg.imu.accel_noise_std;

  auto obs = root["observers"];
  obs["ndob_c"] = cfg.observers.ndob_c;
  obs["ndob_mass_mode"] = cfg.observers.mass_mode == MassMode::kTotal ? "total" : "base";
  obs["butter_cutoff_hz"] = cfg.observers.butter_cutoff_hz;
  obs["hp_cutoff_hz"] = cfg.hp_cutoff_hz();
  obs["hf_frame"] = std::string(to_string(cfg.observers.hf_frame));
  obs["sensor_rate_hz"] = cfg.observers.sensor_rate_hz;
  obs["control_rate_hz"] = cfg.observers.control_rate_hz;

  auto ctl = root["control"];
  ctl["kpp"] = vec_node(cfg.control.kpp);
  ctl["kvp"] = vec_node(cfg.control.kvp);
  ctl["kvi"] = vec_node(cfg.control.kvi);
  ctl["kvd"] = vec_node(cfg.control.kvd);
  ctl["integral_limit"] = vec_node(cfg.control.integral_limit);
  ctl["derivative_cutoff_hz"] = cfg.control.derivative_cutoff_hz;
  ctl["kp_arm"] = vec_node(cfg.control.kp_arm);
  ctl["kd_arm"] = vec_node(cfg.control.kd_arm);
  ctl["arm_reference_rate_ff"] = cfg.control.arm_reference_rate_ff;
  ctl["k_att"] = cfg.control.k_att;
  ctl["d_z"] = cfg.control.d_z;
  ctl["jerk_feedforward"] = cfg.control.jerk_feedforward;
  ctl["jerk_cutoff_hz"] = cfg.control.jerk_cutoff_hz;
  ctl["thrust_projection"] =
      cfg.control.thrust_projection == ThrustProjection::kCurrent ? "current" : "desired";
  ctl["rate_feedforward"] = cfg.rate_feedforward;

  auto wind = root["wind"];
  wind["kind"] = std::string(to_string(cfg.wind.kind));
  wind["force"] = vec_node(cfg.wind.f_const);
  wind["amplitude"] = vec_node(cfg.wind.amplitude);
  wind["freq_hz"] = cfg.wind.freq_hz;
  wind["t_step"] = cfg.wind.t_step;

  auto sc = root["scenario"];
  sc["kind"] = std::string(to_string(cfg.scenario.kind));
  sc["duration_s"] = cfg.scenario.duration_s;
  sc["seed"] = cfg.scenario.seed;
  sc["ablation"] = std::string(to_string(cfg.scenario.ablation));
  sc["metrics_start_s"] = cfg.scenario.metrics_start_s;
  sc["arm_home"] = vec_node(cfg.scenario.arm_home);
  sc["arm_mode"] = std::string(to_string(cfg.scenario.arm_mode));
  if (cfg.scenario.hold_point) sc["hold_point"] = vec_node(*cfg.scenario.hold_point);
  sc["quad_trajectory"] = trajectory_node(cfg.scenario.quad_trajectory);
  sc["arm_trajectory"] = trajectory_node(cfg.scenario.arm_trajectory);
  return root;
}

}  // namespace amctl
