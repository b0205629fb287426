#include <benchmark/benchmark.h>

#include "amctl/config.hpp"
#include "amctl/observers.hpp"
#include "amctl/plant.hpp"
#include "amctl/scenario.hpp"

using namespace amctl;

namespace {

void BM_NdobStep(benchmark::State& state) {
  NdobState ndob(NdobConfig{});
  ndob.reset();
  const RotMat r = RotMat::Identity();
  const Vec3 a(0.1, -0.2, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(ndob.ndob_step(a, 9.9, r, 1e-3));
}
BENCHMARK(BM_NdobStep);

void BM_PlantStep(benchmark::State& state) {
  QuadParams prm;
  prm.m_payload = 0.4;
  const DeltaGeometry geom;
  Plant plant(prm, geom, WindModel{}, ImuModel{0.05}, 1);
  ArmState arm;
  arm.q = inverse_position(Vec3(0, 0, -0.16), geom);
  plant.set_state(QuadState{}, arm);
  const double t_hover = kGravityMagnitude * (prm.total_mass() + 0.4) / prm.total_mass();
  for (auto _ : state) {
    benchmark::DoNotOptimize(plant.step(t_hover, Vec3::Zero(), JointVec::Zero(), 1e-3));
  }
}
BENCHMARK(BM_PlantStep);

// Whole closed-loop runs; items are simulated seconds.
void BM_Scenario(benchmark::State& state) {
  ScenarioConfig cfg = default_config(static_cast<ScenarioKind>(state.range(0)));
  cfg.scenario.duration_s = 10.0;
  cfg.scenario.metrics_start_s = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
  state.SetItemsProcessed(state.iterations() * 10);
  state.SetLabel(std::string(to_string(cfg.scenario.kind)));
}
BENCHMARK(BM_Scenario)
    ->Arg(static_cast<int>(ScenarioKind::kDisturbanceRejection))
    ->Arg(static_cast<int>(ScenarioKind::kTrajectoryCompensation))
    ->Arg(static_cast<int>(ScenarioKind::kEeStabilization))
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
