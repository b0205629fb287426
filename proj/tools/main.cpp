#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "amctl/config.hpp"
#include "amctl/error.hpp"
#include "amctl/scenario.hpp"
#include "amctl/telemetry.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using namespace amctl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAbort = 3;

YAML::Node load_yaml(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw Error(ErrorCode::kConfig, "cannot open '" + path + "'");
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kConfig, "cannot parse '" + path + "': " + e.what());
  }
}

// One-line text of a grid value, e.g. "[0, 0, 0.16]".
std::string value_text(const YAML::Node& v) {
  YAML::Emitter out;
  out << YAML::Flow << v;
  return out.c_str();
}

std::string csv_cell(const std::string& text) {
  return text.find(',') == std::string::npos ? text : "\"" + text + "\"";
}

std::string label_for(const ScenarioResult& r) {
  return std::string(to_string(r.kind)) + " " + std::string(to_string(r.ablation)) +
         " seed " + std::to_string(r.seed);
}

int cmd_run(const std::string& config_path, const std::string& ablation,
            const std::string& out_dir) {
  YAML::Node root = load_yaml(config_path);
  if (!ablation.empty()) set_dotted(root, "scenario.ablation", YAML::Node(ablation));
  const ScenarioConfig cfg = config_from_yaml(root);

  const ScenarioResult res = run_scenario(cfg);
  const fs::path dir = out_dir.empty()
                           ? fs::path("runs") / (std::string(to_string(res.kind)) + "_" +
                                                 std::string(to_string(res.ablation)))
                           : fs::path(out_dir);
  tools::write_run_directory(dir, res, cfg);

  std::cout << format_table_row(label_for(res), res.primary) << '\n'
            << format_std_row("  quad", res.quad) << '\n'
            << format_std_row("  end-effector", res.ee) << '\n'
            << "  output: " << dir.string() << '\n';
  if (res.aborted) {
    std::cerr << "run aborted: " << res.abort_reason << '\n';
    return kExitAbort;
  }
  return kExitOk;
}

struct GridAxis {
  std::string key;
  std::vector<YAML::Node> values;
};

std::vector<GridAxis> load_grid(const std::string& path) {
  const YAML::Node grid = load_yaml(path);
  if (!grid.IsMap()) throw Error(ErrorCode::kConfig, "grid must map dotted keys to lists");
  std::vector<GridAxis> axes;
  for (const auto& kv : grid) {
    GridAxis axis{kv.first.as<std::string>(), {}};
    if (kv.second.IsSequence()) {
      for (const auto& v : kv.second) axis.values.push_back(v);
    } else {
      axis.values.push_back(kv.second);
    }
    if (axis.values.empty()) {
      throw Error(ErrorCode::kConfig, "grid key '" + axis.key + "' has no values");
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

int cmd_sweep(const std::string& config_path, const std::string& grid_path,
              const std::string& out_dir, unsigned jobs) {
  const YAML::Node base = load_yaml(config_path);
  const auto axes = load_grid(grid_path);

  // Cartesian product, last key varying fastest.
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();
  std::vector<ScenarioConfig> configs;
  std::vector<std::string> labels;
  for (std::size_t n = 0; n < total; ++n) {
    YAML::Node node = YAML::Clone(base);
    std::size_t rem = n;
    std::string label;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
      const auto& v = it->values[rem % it->values.size()];
      rem /= it->values.size();
      set_dotted(node, it->key, v);
      label = it->key + "=" + value_text(v) + (label.empty() ? "" : " ") + label;
    }
    configs.push_back(config_from_yaml(node));
    labels.push_back(label);
  }

  std::vector<ScenarioResult> results(total);
  std::atomic<std::size_t> next{0};
  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs ? jobs : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(total)));
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < total; i = next++) {
        results[i] = run_scenario(configs[i]);
      }
    }));
  }
  for (auto& f : pool) f.get();

  const fs::path dir = out_dir.empty() ? fs::path("runs") / "sweep" : fs::path(out_dir);
  fs::create_directories(dir);
  std::ofstream summary(dir / "summary.csv");
  summary << "run";
  for (const auto& a : axes) summary << ',' << a.key;
  summary << ",rmse_m,max_error_m,std_m,quad_rmse_m,ee_rmse_m,aborted\n";

  bool any_aborted = false;
  for (std::size_t i = 0; i < total; ++i) {
    char run_name[32];
    std::snprintf(run_name, sizeof(run_name), "run_%03zu", i);
    tools::write_run_directory(dir / run_name, results[i], configs[i]);

    const auto& r = results[i];
    summary << run_name;
    std::size_t rem = i;
    std::vector<std::string> cells(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      cells[k] = csv_cell(value_text(axes[k].values[rem % axes[k].values.size()]));
      rem /= axes[k].values.size();
    }
    for (const auto& c : cells) summary << ',' << c;
    char buf[160];
    std::snprintf(buf, sizeof(buf), ",%.9g,%.9g,%.9g,%.9g,%.9g,%d\n", r.primary.rmse,
                  r.primary.max_error, r.primary.std, r.quad.rmse, r.ee.rmse,
                  r.aborted ? 1 : 0);
    summary << buf;
    std::cout << format_table_row(labels[i], r.primary) << (r.aborted ? " (aborted)" : "")
              << '\n';
    any_aborted = any_aborted || r.aborted;
  }
  std::cout << "summary: " << (dir / "summary.csv").string() << '\n';
  return any_aborted ? kExitAbort : kExitOk;
}

int cmd_metrics(const std::string& csv_path, const std::string& target,
                const std::vector<double>& reference, double from) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open '" + csv_path + "'");
  const auto rows = read_telemetry_csv(in);

  std::vector<Vec3> errors;
  std::optional<Vec3> ref;
  if (reference.size() == 3) ref = Vec3(reference[0], reference[1], reference[2]);
  for (const auto& r : rows) {
    if (r.t < from) continue;
    const Vec3 p = target == "ee" ? r.ee : r.p;
    if (!ref) ref = p;
    errors.push_back(p - *ref);
  }
  const MetricsReport m = compute_metrics(errors);
  std::cout << format_table_row(target, m) << '\n' << format_std_row(target, m) << '\n';
  std::cout << tools::metrics_json(m).dump(2) << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const ScenarioConfig cfg = load_config(config_path);
  std::cout << "ok: " << to_string(cfg.scenario.kind) << ", "
            << to_string(cfg.scenario.ablation) << ", " << cfg.scenario.duration_s
            << " s\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aerial manipulator simulation and control"};
  app.require_subcommand(1);

  std::string config_path, ablation, out_dir, grid_path, csv_path, target = "quad";
  std::vector<double> reference;
  double from = 0.0;
  unsigned jobs = 0;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--config", config_path, "Scenario YAML")->required();
  run->add_option("--ablation", ablation, "baseline | ndob_only | full")
      ->check(CLI::IsMember({"baseline", "ndob_only", "full"}));
  run->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run the Cartesian product of a grid");
  sweep->add_option("--config", config_path, "Base scenario YAML")->required();
  sweep->add_option("--grid", grid_path, "YAML map of dotted keys to value lists")
      ->required();
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--jobs", jobs, "Parallel runs (0: all cores)");

  auto* metrics = app.add_subcommand("metrics", "Error metrics of a telemetry CSV");
  metrics->add_option("csv", csv_path, "telemetry.csv")->required();
  metrics->add_option("--target", target, "quad | ee")
      ->check(CLI::IsMember({"quad", "ee"}));
  metrics->add_option("--reference", reference, "Fixed reference point x y z")
      ->expected(3);
  metrics->add_option("--from", from, "Ignore rows before this time, s");

  auto* validate = app.add_subcommand("validate-config", "Parse and check a config");
  validate->add_option("config", config_path, "Scenario YAML")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, ablation, out_dir);
    if (*sweep) return cmd_sweep(config_path, grid_path, out_dir, jobs);
    if (*metrics) return cmd_metrics(csv_path, target, reference, from);
    if (*validate) return cmd_validate(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kConfig ? kExitConfig : kExitAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
