#include <benchmark/benchmark.h>

#include "amctl/delta_kinematics.hpp"

using namespace amctl;

namespace {

const DeltaGeometry kGeom;
const JointVec kQ(0.3, 0.5, 0.4);

void BM_ForwardPosition(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(forward_position(kQ, kGeom));
}
BENCHMARK(BM_ForwardPosition);

void BM_InversePosition(benchmark::State& state) {
  const Vec3 p = forward_position(kQ, kGeom);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_position(p, kGeom));
}
BENCHMARK(BM_InversePosition);

void BM_InverseVelocity(benchmark::State& state) {
  const Vec3 p = forward_position(kQ, kGeom);
  const Vec3 v(0.05, -0.02, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_velocity(kQ, p, v, kGeom));
}
BENCHMARK(BM_InverseVelocity);

}  // namespace
