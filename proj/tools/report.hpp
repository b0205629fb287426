#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "amctl/scenario.hpp"

namespace amctl::tools {

nlohmann::json yaml_to_json(const YAML::Node& node);
nlohmann::json metrics_json(const MetricsReport& m);
nlohmann::json result_json(const ScenarioResult& result, const ScenarioConfig& cfg);

/// Writes telemetry.csv and metrics.json into dir (created if missing).
void write_run_directory(const std::filesystem::path& dir, const ScenarioResult& result,
                         const ScenarioConfig& cfg);

}  // namespace amctl::tools
