// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amctl/config.hpp"
#include "amctl/controllers.hpp"
#include "amctl/observers.hpp"
#include "amctl/scenario.hpp"
#include "amctl/telemetry.hpp"
#include "support.hpp"

using namespace amctl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rms(const std::vector<Vec3>& v) {
  double s = 0.0;
  for (const auto& x : v) s += x.squaredNorm();
  return std::sqrt(s / static_cast<double>(v.size()));
}

Outcome kinematics_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  const DeltaGeometry g;
  std::mt19937_64 rng(101);
  double worst_q = 0.0, worst_res = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const JointVec q = test::random_reachable_q(rng, g);
    const Vec3 p = forward_position(q, g);
    worst_res = std::max(worst_res, constraint_residual(q, p, g));
    worst_q = std::max(worst_q, (inverse_position(p, g) - q).cwiseAbs().maxCoeff());
  }
  const double rt = seconds_since(t0);
  return {worst_q < 1e-8 && worst_res < 1e-10 && rt < 5.0,
          fmt("max |IK(FK(q)) - q| = %.2e rad, max residual = %.2e m, %.2f s", worst_q,
              worst_res, rt)};
}

Outcome jacobian_correctness() {
  const DeltaGeometry g;
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eps = 1e-6;
  double worst_fd = 0.0, worst_inv = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const JointVec q = test::random_reachable_q(rng, g);
    const JointVec qd(u(rng), u(rng), u(rng));
    const Vec3 fd =
        (forward_position(q + eps * qd, g) - forward_position(q - eps * qd, g)) / (2 * eps);
    const Vec3 an = forward_velocity(q, qd, g);
    worst_fd = std::max(worst_fd, (fd - an).norm() / an.norm());
    const Vec3 p = forward_position(q, g);
    const ArmJacobians jac = arm_jacobians(q, p, g);
    const Vec3 v(u(rng), u(rng), u(rng));
    worst_inv = std::max(worst_inv, (forward_velocity(jac, inverse_velocity(jac, v, g), g) - v).norm());
  }
  return {worst_fd < 1e-5 && worst_inv < 1e-9,
          fmt("max FD rel. error = %.2e, max |fv(iv(v)) - v| = %.2e", worst_fd, worst_inv)};
}

Outcome ndob_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const double m = 1.3822;
  NdobState ndob({10.0 * m, m, 1000.0, 50.0});
  ndob.reset();
  double worst = 0.0;
  for (int k = 1; k <= 500; ++k) {
    ndob.ndob_step(Vec3(1.0 / m, 0, 0), kGravityMagnitude, RotMat::Identity(), 1e-3);
    const double analytic = 1.0 - std::exp(-10.0 * k * 1e-3);
    worst = std::max(worst, std::abs(ndob.f_hat().x() - analytic) / analytic);
  }
  const double final_err = std::abs(ndob.f_hat().x() - 1.0);
  const double rt = seconds_since(t0);
  return {final_err < 0.01 && worst < 0.02 && rt < 1.0,
          fmt("error at 0.5 s = %.4f N, max deviation from 1 - e^-10t = %.2f%%, %.3f s",
              final_err, 100 * worst, rt)};
}

Outcome filter_responses() {
  const Biquad lp = butterworth2_design(50.0, 1000.0, FilterKind::kLowPass);
  Biquad run = lp;
  const double g_cut = test::sine_gain([&](double x) { return run.step(x); }, 50.0, 1000.0);
  const double g_10x = lp.magnitude(500.0);
  Biquad fast = butterworth2_design(50.0, 10000.0, FilterKind::kLowPass);
  const double g_10x_sim =
      test::sine_gain([&](double x) { return fast.step(x); }, 500.0, 10000.0);

  const double fc = matched_highpass_cutoff(13.822, 1.3822);
  const double tau = 1.0 / (2 * 3.141592653589793 * fc);
  const double dt = 0.01;
  FirstOrderHighPass hp(fc);
  double out = 1.0;
  for (int k = 0; k <= static_cast<int>(std::ceil(5 * tau / dt)); ++k) out = hp.step(1.0, dt);
  const bool pass = std::abs(g_cut - std::sqrt(0.5)) <= 0.01 && g_10x <= 0.012 &&
                    g_10x_sim <= 0.012 && std::abs(out) < 1e-3;
  return {pass, fmt("LP gain at fc = %.4f, at 10 fc = %.4f (fs 1 kHz) / %.4f (fs 10 kHz), "
                    "HP DC output after 5 tau = %.1e",
                    g_cut, g_10x, g_10x_sim, std::abs(out))};
}

Outcome complementary_estimation() {
  ScenarioConfig cfg = default_config(ScenarioKind::kDisturbanceRejection);
  cfg.scenario.ablation = CompensationMode::kFull;
  cfg.quad.m_payload = 0.4;
  cfg.scenario.arm_trajectory.speed = 0.1;
  cfg.wind.kind = WindKind::kConstant;
  cfg.wind.f_const = Vec3(0.5, 0, 0);
  cfg.scenario.metrics_start_s = 2.0;
  const ScenarioResult r = run_scenario(cfg);
  if (r.aborted) return {false, "run aborted: " + r.abort_reason};
  const double ratio = rms(r.estimate_error) / rms(r.f_ext);
  return {ratio < 0.2, fmt("RMS(f_low + f_high - f_ext) / RMS(f_ext) = %.3f", ratio)};
}

Outcome ablation_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig cfg = default_config(ScenarioKind::kDisturbanceRejection);
  cfg.quad.m_payload = 0.4;
  cfg.scenario.arm_trajectory.speed = 0.1;
  bool pass = true;
  double worst_ratio = 0.0;
  std::string rows;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.scenario.seed = seed;
    double rmse[3];
    int i = 0;
    for (auto mode : {CompensationMode::kBaseline, CompensationMode::kNdobOnly,
                      CompensationMode::kFull}) {
      cfg.scenario.ablation = mode;
      const ScenarioResult r = run_scenario(cfg);
      pass = pass && !r.aborted;
      rmse[i++] = r.primary.rmse;
    }
    const double ratio = rmse[2] / rmse[1];
    worst_ratio = std::max(worst_ratio, ratio);
    pass = pass && rmse[2] < rmse[1] && rmse[1] < rmse[0] && ratio <= 0.6;
    if (seed == 1) rows = fmt("seed 1: baseline %.4f, ndob_only %.4f, full %.4f m", rmse[0], rmse[1], rmse[2]);
  }
  const double rt = seconds_since(t0);
  pass = pass && rt < 60.0;
  return {pass, rows + fmt("; worst full/ndob_only over 5 seeds = %.3f, %.1f s", worst_ratio, rt)};
}

Outcome stabilization_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig cfg = default_config(ScenarioKind::kEeStabilization);
  cfg.scenario.ablation = CompensationMode::kFull;
  cfg.scenario.quad_trajectory.diameter = 0.12;
  cfg.scenario.quad_trajectory.speed = 0.05;
  const ScenarioResult r = run_scenario(cfg);
  const double rt = seconds_since(t0);
  const double radius = 0.06;
  const bool pass = !r.aborted && r.ee.rmse < 0.25 * radius && r.ee.rmse < 0.5 * r.quad.rmse &&
                    rt < 30.0;
  return {pass, fmt("ee RMSE %.4f m, quad RMSE %.4f m (ee/quad %.2f, ee/radius %.3f), %.2f s",
                    r.ee.rmse, r.quad.rmse, r.ee.rmse / r.quad.rmse, r.ee.rmse / radius, rt)};
}

Outcome trajectory_compensation_trend() {
  ScenarioConfig cfg = default_config(ScenarioKind::kTrajectoryCompensation);
  cfg.scenario.ablation = CompensationMode::kFull;
  const ScenarioResult r = run_scenario(cfg);
  const bool pass = !r.aborted && r.ee.rmse <= 0.5 * r.quad.rmse;
  return {pass, fmt("ee RMSE %.4f m, quad RMSE %.4f m (ee/quad %.2f)", r.ee.rmse, r.quad.rmse,
                    r.ee.rmse / r.quad.rmse)};
}

Outcome flatness_consistency() {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  std::uniform_real_distribution<double> yaw(-3.1, 3.1);
  const Gains gains;
  double worst = 0.0;
  int n = 0;
  while (n < 10000) {
    const Vec3 a_c(u(rng), u(rng), u(rng));
    const double psi = yaw(rng);
    FlatAttitude f;
    try {
      f = flatness_attitude_thrust(a_c, psi, QuadState{}, gains);
    } catch (const Error&) {
      continue;
    }
    QuadState at;
    at.R = f.R_des;
    f = flatness_attitude_thrust(a_c, psi, at, gains);
    worst = std::max(worst, (f.T_spec * f.R_des.col(2) + gravity() - a_c).norm());
    ++n;
  }
  const double hover = flatness_attitude_thrust(Vec3::Zero(), 0.0, QuadState{}, gains).T_spec;
  return {worst < 1e-9 && hover == 9.80665,
          fmt("max reconstruction error %.2e m/s^2 over %d samples, hover T_spec = %.17g", worst,
              n, hover)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "amctl_acceptance_determinism";
  fs::create_directories(dir);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  bool pass = true;
  std::string detail;
  for (auto kind : {ScenarioKind::kDisturbanceRejection, ScenarioKind::kTrajectoryCompensation,
                    ScenarioKind::kEeStabilization}) {
    ScenarioConfig cfg = default_config(kind);
    cfg.scenario.seed = 7;
    std::string files[2];
    for (int i = 0; i < 2; ++i) {
      const fs::path p = dir / (std::string(to_string(kind)) + "_" + std::to_string(i) + ".csv");
      {
        std::ofstream out(p, std::ios::binary);
        write_telemetry_csv(out, run_scenario(cfg).telemetry);
      }
      files[i] = slurp(p);
    }
    const bool same = !files[0].empty() && files[0] == files[1];
    pass = pass && same;
    detail += fmt("%s%s %s (%zu bytes)", detail.empty() ? "" : ", ",
                  std::string(to_string(kind)).c_str(), same ? "identical" : "DIFFERENT",
                  files[0].size());
  }
  fs::remove_all(dir);
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kinematics round trip", kinematics_round_trip},
      {"Jacobian correctness", jacobian_correctness},
      {"NDOB convergence", ndob_convergence},
      {"filter responses", filter_responses},
      {"complementary estimation", complementary_estimation},
      {"ablation trend (scenario A)", ablation_trend},
      {"stabilization trend (scenario C)", stabilization_trend},
      {"trajectory compensation trend (scenario B)", trajectory_compensation_trend},
      {"flatness consistency", flatness_consistency},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s: %s | %s\n", index++, o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
