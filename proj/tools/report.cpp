#include "report.hpp"

#include <fstream>

#include "amctl/error.hpp"
#include "amctl/telemetry.hpp"

namespace amctl::tools {

namespace {

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

nlohmann::json scalar_json(const YAML::Node& n) {
  const std::string s = n.Scalar();
  if (n.Tag() == "!") return s;  // quoted
  if (s == "true" || s == "false") return s == "true";
  try {
    std::size_t used = 0;
    const long long i = std::stoll(s, &used);
    if (used == s.size()) return i;
  } catch (const std::exception&) {
  }
  try {
    std::size_t used = 0;
    const double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::exception&) {
  }
  return s;
}

}  // namespace

nlohmann::json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Map: {
      nlohmann::json j = nlohmann::json::object();
      for (const auto& kv : node) j[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return j;
    }
    case YAML::NodeType::Sequence: {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& item : node) j.push_back(yaml_to_json(item));
      return j;
    }
    case YAML::NodeType::Scalar:
      return scalar_json(node);
    default:
      return nullptr;
  }
}

nlohmann::json metrics_json(const MetricsReport& m) {
  return {{"rmse_m", m.rmse},
          {"max_error_m", m.max_error},
          {"std_m", m.std},
          {"samples", m.samples},
          {"per_axis",
           {{"rmse_m", vec_json(m.rmse_axis)},
            {"max_error_m", vec_json(m.max_axis)},
            {"std_m", vec_json(m.std_axis)}}}};
}

nlohmann::json result_json(const ScenarioResult& r, const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["scenario"] = std::string(to_string(r.kind));
  j["ablation"] = std::string(to_string(r.ablation));
  j["target"] = r.primary_is_ee ? "end_effector" : "quad";
  j["rmse_m"] = r.primary.rmse;
  j["max_error_m"] = r.primary.max_error;
  j["std_m"] = r.primary.std;
  j["per_axis"] = metrics_json(r.primary)["per_axis"];
  j["seed"] = r.seed;
  j["duration_s"] = r.duration_s;
  j["quad"] = metrics_json(r.quad);
  j["end_effector"] = metrics_json(r.ee);
  j["runtime_s"] = r.runtime_s;
  j["telemetry_rows"] = r.telemetry.size();
  j["aborted"] = r.aborted;
  if (r.aborted) j["abort_reason"] = r.abort_reason;
  j["arm"] = {{"saturated_ticks", r.arm_saturated_ticks},
              {"singular_ticks", r.arm_singular_ticks},
              {"workspace_clamped_ticks", r.workspace_clamped_ticks}};
  j["config"] = yaml_to_json(config_to_yaml(cfg));
  return j;
}

void write_run_directory(const std::filesystem::path& dir, const ScenarioResult& result,
                         const ScenarioConfig& cfg) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "telemetry.csv");
  std::ofstream js(dir / "metrics.json");
  if (!csv || !js) throw std::runtime_error("cannot write into " + dir.string());
  write_telemetry_csv(csv, result.telemetry);
  js << result_json(result, cfg).dump(2) << '\n';
}

}  // namespace amctl::tools
