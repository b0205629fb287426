#include <doctest.h>

#include <cmath>
#include <numbers>

#include "amctl/error.hpp"
#include "amctl/plant.hpp"
#include "support.hpp"

using namespace amctl;
using doctest::Approx;

namespace {

double state_distance(const QuadState& a, const QuadState& b) {
  return (a.p - b.p).norm() + (a.v - b.v).norm() + test::max_abs(a.R - b.R) +
         (a.omega - b.omega).norm();
}

QuadState integrate(QuadState s, const QuadParams& prm, double t_end, int steps) {
  const double dt = t_end / steps;
  for (int k = 0; k < steps; ++k) {
    s = quadrotor_step(s, prm, 11.0, Vec3(1.0, -2.0, 0.5), Vec3(0.3, 0.1, -0.2),
                       Vec3(0.01, 0.0, -0.02), dt);
  }
  return s;
}

}  // namespace

TEST_SUITE("plant") {
  TEST_CASE("free fall") {
    QuadParams prm;
    prm.thrust_min = 0.0;
    prm.d_z = 0.0;
    const QuadState s =
        quadrotor_step(QuadState{}, prm, 0.0, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), 0.1);
    CHECK((s.v - Vec3(0, 0, -0.980665)).norm() < 1e-12);
    CHECK(s.p.z() == Approx(-0.5 * 9.80665 * 0.01));
  }

  TEST_CASE("hover is an equilibrium") {
    const QuadParams prm;
    QuadState s;
    s.p = Vec3(1, 2, 3);
    for (int k = 0; k < 100; ++k) {
      const QuadState n = quadrotor_step(s, prm, kGravityMagnitude, Vec3::Zero(), Vec3::Zero(),
                                         Vec3::Zero(), 1e-3);
      CHECK(state_distance(n, s) < 1e-12);
      s = n;
    }
  }

  TEST_CASE("external force obeys Newton's second law") {
    const QuadParams prm;
    REQUIRE(prm.total_mass() == Approx(1.3822));
    const Vec3 a = quadrotor_acceleration(QuadState{}, prm, kGravityMagnitude,
                                          Vec3(prm.total_mass(), 0, 0));
    CHECK((a - Vec3(1, 0, 0)).norm() < 1e-14);
  }

  TEST_CASE("thrust is clamped") {
    const QuadParams prm;
    CHECK(clamp_thrust(100.0, prm) == prm.thrust_max);
    CHECK(clamp_thrust(-1.0, prm) == prm.thrust_min);
    CHECK(clamp_thrust(9.0, prm) == 9.0);
  }

  TEST_CASE("RK4 converges at fourth order") {
    QuadParams prm;
    QuadState s0;
    s0.v = Vec3(0.5, -0.2, 0.1);
    s0.R = rot_x(0.2) * rot_y(-0.1);
    s0.omega = Vec3(0.3, 0.2, -0.4);
    const QuadState ref = integrate(s0, prm, 1.0, 16384);
    const double e1 = state_distance(integrate(s0, prm, 1.0, 128), ref);
    const double e2 = state_distance(integrate(s0, prm, 1.0, 256), ref);
    const double e3 = state_distance(integrate(s0, prm, 1.0, 512), ref);
    CHECK(std::log2(e1 / e2) > 3.6);
    CHECK(std::log2(e2 / e3) > 3.6);
  }

  TEST_CASE("rate loop drives the body rate to the command") {
    QuadParams prm;
    prm.rate_integral_gain = 0.0;
    QuadState s;
    for (int k = 0; k < 2000; ++k) {
      s = quadrotor_step(s, prm, kGravityMagnitude, Vec3(0.5, 0, 0), Vec3::Zero(), Vec3::Zero(),
                         1e-3);
    }
    CHECK(s.omega.x() == Approx(0.5).epsilon(1e-6));
    CHECK(orthonormality_error(s.R) < 1e-12);
  }

  TEST_CASE("reaction wrench examples") {
    const QuadState hover;
    const Vec3 lever(0, 0, -0.2);
    CHECK((reaction_wrench(Vec3::Zero(), 0.4, lever, hover).f - Vec3(0, 0, -3.92266)).norm() <
          1e-12);
    CHECK(reaction_wrench(Vec3(0, 0, 1), 0.4, lever, hover).f.z() == Approx(-4.32266));
    const Wrench w = reaction_wrench(Vec3(0.3 * 9.81, 0, 0), 0.4, lever, hover);
    CHECK(w.f.x() == Approx(-1.1772));
    CHECK((w.tau - lever.cross(w.f)).norm() < 1e-15);
  }

  TEST_CASE("reaction torque is expressed in the body frame") {
    QuadState quad;
    quad.R = rot_z(std::numbers::pi / 2);
    const Wrench w = reaction_wrench(Vec3(1, 0, 0) + gravity(), 1.0, Vec3(0, 0, -0.1), quad);
    CHECK((w.f - Vec3(-1, 0, 0)).norm() < 1e-15);
    // World -x is body +y after a quarter turn.
    CHECK((w.tau - Vec3(0, 0, -0.1).cross(Vec3(0, 1, 0))).norm() < 1e-15);
  }

  TEST_CASE("servo examples") {
    const QuadParams prm;
    const DeltaGeometry geom;
    ArmState arm;
    arm.q = JointVec::Constant(0.3);
    arm.q_dot = JointVec(0.5, -0.2, 0.1);
    const ArmState same = servo_step(arm, arm.q_dot, prm, geom, 1e-3);
    CHECK((same.q_dot - arm.q_dot).norm() == 0.0);
    CHECK((same.q - (arm.q + arm.q_dot * 1e-3)).norm() < 1e-15);

    ArmState a;
    a.q = JointVec::Constant(0.3);
    for (int k = 0; k < 20; ++k) a = servo_step(a, JointVec(1, 0, 0), prm, geom, 1e-3);
    CHECK(a.q_dot.x() == Approx(1 - std::exp(-1.0)).epsilon(1e-9));
    CHECK(a.q_dot.x() == Approx(0.632).epsilon(1e-3));

    ArmState b;
    b.q = JointVec::Constant(0.3);
    b.q_dot = JointVec::Constant(prm.servo_rate_limit);
    b = servo_step(b, JointVec::Constant(50.0), prm, geom, 1e-3);
    CHECK(b.q_dot.x() == prm.servo_rate_limit);
  }

  TEST_CASE("servo stops at the joint limits") {
    const QuadParams prm;
    const DeltaGeometry geom;
    ArmState a;
    a.q = JointVec::Constant(1.8);
    for (int k = 0; k < 200; ++k) a = servo_step(a, JointVec(3, 0, 0), prm, geom, 1e-3);
    CHECK(a.q.x() == geom.q_max);
    CHECK(a.q_dot.x() == 0.0);
  }

  TEST_CASE("wind models") {
    WindModel w;
    w.kind = WindKind::kConstant;
    w.f_const = Vec3(0.5, 0, 0);
    for (double t : {0.0, 1.0, 100.0}) CHECK((wind_force(w, t) - w.f_const).norm() == 0.0);

    w.kind = WindKind::kStep;
    w.t_step = 2.0;
    CHECK(wind_force(w, 1.999).norm() == 0.0);
    CHECK((wind_force(w, 2.0) - w.f_const).norm() == 0.0);

    w.kind = WindKind::kSine;
    w.amplitude = Vec3(0.3, 0, 0);
    w.freq_hz = 0.2;
    CHECK(wind_force(w, 1.25).x() == Approx(0.3));

    w.kind = WindKind::kNone;
    CHECK(wind_force(w, 3.0).norm() == 0.0);
  }

  TEST_CASE("plant holds hover with the payload weight in f_ext") {
    QuadParams prm;
    prm.m_payload = 0.4;
    const DeltaGeometry geom;
    Plant plant(prm, geom, WindModel{}, ImuModel{0.0}, 1);
    ArmState arm;
    arm.q = inverse_position(Vec3(0, 0, -0.16), geom);
    plant.set_state(QuadState{}, arm);
    const double t_hover = kGravityMagnitude * (prm.total_mass() + 0.4) / prm.total_mass();
    for (int k = 0; k < 100; ++k) {
      plant.step(t_hover, Vec3::Zero(), JointVec::Zero(), 1e-3);
    }
    CHECK(plant.last().f_ext.z() == Approx(-0.4 * kGravityMagnitude).epsilon(1e-9));
    CHECK(plant.quad().p.norm() < 1e-9);
    CHECK(plant.quad().omega.norm() < 1e-9);
  }

  TEST_CASE("plant is deterministic for a seed") {
    const QuadParams prm;
    const DeltaGeometry geom;
    auto run = [&](std::uint64_t seed) {
      Plant plant(prm, geom, WindModel{}, ImuModel{0.05}, seed);
      ArmState arm;
      arm.q = JointVec::Constant(0.3);
      plant.set_state(QuadState{}, arm);
      Vec3 sum = Vec3::Zero();
      for (int k = 0; k < 200; ++k) {
        sum += plant.step(9.9, Vec3(0.1, 0, 0), JointVec(0.2, 0, -0.1), 1e-3).a_meas;
      }
      return sum;
    };
    CHECK((run(5) - run(5)).norm() == 0.0);
    CHECK((run(5) - run(6)).norm() > 0.0);
  }

  TEST_CASE("parameter validation") {
    QuadParams prm;
    prm.m_base = 0.0;
    CHECK_THROWS_AS(prm.validate(), Error);
    prm = QuadParams{};
    prm.m_payload = -0.1;
    CHECK_THROWS_AS(prm.validate(), Error);
    prm = QuadParams{};
    prm.inertia = Vec3(0.01, -0.01, 0.02);
    CHECK_THROWS_AS(prm.validate(), Error);
    WindModel w;
    w.freq_hz = -1.0;
    CHECK_THROWS_AS(w.validate(), Error);
  }
}
