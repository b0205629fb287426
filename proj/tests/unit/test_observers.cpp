#include <doctest.h>

#include <cmath>
#include <numbers>

#include "amctl/error.hpp"
#include "amctl/observers.hpp"
#include "support.hpp"

using namespace amctl;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Analog second-order Butterworth magnitude.
double butter_mag(double f, double fc) { return 1.0 / std::sqrt(1.0 + std::pow(f / fc, 4)); }

// Accelerometer reading of a level vehicle at hover thrust under f_ext.
Vec3 accel_under(const Vec3& f_ext, double mass) { return f_ext / mass; }

}  // namespace

TEST_SUITE("observers") {
  TEST_CASE("NDOB step response follows 1 - exp(-c t / m)") {
    const double m = 1.3822;
    NdobState ndob({10.0 * m, m, 1000.0, 50.0});
    ndob.reset();
    const Vec3 f(1, 0, 0);
    const double dt = 1e-3;
    double worst = 0.0;
    for (int k = 1; k <= 1000; ++k) {
      ndob.ndob_step(accel_under(f, m), kGravityMagnitude, RotMat::Identity(), dt);
      const double t = k * dt;
      const double analytic = 1.0 - std::exp(-10.0 * t);
      worst = std::max(worst, std::abs(ndob.f_hat().x() - analytic) / analytic);
      if (k == 100) CHECK(ndob.f_hat().x() == Approx(0.632).epsilon(0.01));
      if (k == 500) CHECK(ndob.f_hat().x() == Approx(0.9933).epsilon(0.002));
    }
    CHECK(worst < 0.02);
    CHECK(std::abs(ndob.f_hat().y()) < 1e-15);
  }

  TEST_CASE("NDOB output filter converges to the raw estimate") {
    const double m = 1.3822;
    NdobState ndob({10.0 * m, m, 1000.0, 50.0});
    ndob.reset();
    Vec3 out;
    for (int k = 0; k < 3000; ++k) {
      out = ndob.ndob_step(accel_under(Vec3(0, -0.5, 0.25), m), kGravityMagnitude,
                           RotMat::Identity(), 1e-3);
    }
    CHECK((out - Vec3(0, -0.5, 0.25)).norm() < 1e-6);
  }

  TEST_CASE("NDOB tracks a slow sinusoid") {
    const double m = 1.3822;
    NdobState ndob({10.0 * m, m, 1000.0, 50.0});
    ndob.reset();
    const double gain = test::sine_gain(
        [&](double x) {
          return ndob
              .ndob_step(accel_under(Vec3(x, 0, 0), m), kGravityMagnitude,
                         RotMat::Identity(), 1e-3)
              .x();
        },
        0.2, 1000.0, 10.0, 4);
    // First-order lag at 0.2 Hz with a 10 1/s pole.
    const double oracle = 1.0 / std::sqrt(1.0 + std::pow(2 * kPi * 0.2 / 10.0, 2));
    CHECK(gain >= 0.95);
    CHECK(gain == Approx(oracle).epsilon(0.005));
  }

  TEST_CASE("NDOB attributes thrust through the attitude") {
    const double m = 1.5;
    NdobState ndob({10.0 * m, m, 1000.0, 50.0});
    ndob.reset();
    const RotMat R = rot_y(0.2) * rot_x(-0.1);
    const double t_spec = 11.0;
    const Vec3 f(0.3, -0.2, 0.1);
    const Vec3 a = t_spec * R * e3() + gravity() + f / m;
    for (int k = 0; k < 3000; ++k) ndob.ndob_step(a, t_spec, R, 1e-3);
    CHECK((ndob.f_hat() - f).norm() < 1e-9);
  }

  TEST_CASE("NDOB requires reset") {
    NdobState ndob({13.822, 1.3822, 1000.0, 50.0});
    try {
      ndob.ndob_step(Vec3::Zero(), kGravityMagnitude, RotMat::Identity(), 1e-3);
      FAIL("expected kNotInitialized");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotInitialized);
    }
  }

  TEST_CASE("Butterworth low-pass") {
    const Biquad lp = butterworth2_design(50.0, 1000.0, FilterKind::kLowPass);
    CHECK(lp.dc_gain() == Approx(1.0).epsilon(1e-9));
    CHECK(lp.magnitude(50.0) == Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(lp.magnitude(500.0) <= 0.012);

    Biquad run = lp;
    double y = 0.0;
    for (int k = 0; k < 2000; ++k) y = run.step(1.0);
    CHECK(std::abs(y - 1.0) < 1e-6);

    run.reset();
    const double g50 = test::sine_gain([&](double x) { return run.step(x); }, 50.0, 1000.0);
    CHECK(std::abs(g50 - std::sqrt(0.5)) < 0.01);

    // Ten times the cutoff, away from Nyquist.
    Biquad fast = butterworth2_design(50.0, 10000.0, FilterKind::kLowPass);
    const double g500 = test::sine_gain([&](double x) { return fast.step(x); }, 500.0, 10000.0);
    CHECK(g500 <= 0.012);
    CHECK(g500 == Approx(butter_mag(500.0, 50.0)).epsilon(0.05));
  }

  TEST_CASE("Butterworth magnitude across a sweep") {
    const Biquad lp = butterworth2_design(20.0, 1000.0, FilterKind::kLowPass);
    for (double f : {1.0, 5.0, 10.0, 20.0, 40.0, 80.0}) {
      Biquad run = lp;
      const double g = test::sine_gain([&](double x) { return run.step(x); }, f, 1000.0, 2.0);
      CHECK(g == Approx(lp.magnitude(f)).epsilon(1e-3));
    }
    const Biquad hp = butterworth2_design(20.0, 1000.0, FilterKind::kHighPass);
    CHECK(std::abs(hp.dc_gain()) < 1e-9);
    CHECK(hp.magnitude(20.0) == Approx(std::sqrt(0.5)).epsilon(1e-6));
  }

  TEST_CASE("Butterworth rejects cutoffs outside (0, fs/2)") {
    for (double fc : {0.0, -1.0, 500.0, 700.0}) {
      try {
        butterworth2_design(fc, 1000.0, FilterKind::kLowPass);
        FAIL("expected kInvalidCutoff");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInvalidCutoff);
      }
    }
  }

  TEST_CASE("first-order high-pass") {
    const double fc = 1.6;
    const double fs = 100.0;
    FirstOrderHighPass hp(fc);
    double y = 1.0;
    for (int k = 0; k < 100; ++k) y = hp.step(2.5, 1.0 / fs);
    CHECK(std::abs(y) < 1e-12);

    // A step arriving later decays with the filter's time constant.
    const double tau = 1.0 / (2 * kPi * fc);
    hp.reset();
    hp.step(0.0, 1.0 / fs);
    const int n = static_cast<int>(std::ceil(5 * tau * fs));
    for (int k = 0; k < n; ++k) y = hp.step(1.0, 1.0 / fs);
    CHECK(std::abs(y) < 1.1 * std::exp(-5.0));
    for (int k = 0; k < 4 * n; ++k) y = hp.step(1.0, 1.0 / fs);
    CHECK(std::abs(y) < 1e-3);

    hp.reset();
    CHECK(test::sine_gain([&](double x) { return hp.step(x, 1 / fs); }, 10 * fc, fs, 5.0) > 0.99);
    hp.reset();
    CHECK(std::abs(test::sine_gain([&](double x) { return hp.step(x, 1 / fs); }, fc, fs, 5.0) -
                   std::sqrt(0.5)) < 0.02);
  }

  TEST_CASE("arm acceleration by backward difference") {
    HighPassState st(1.0);
    CHECK(st.arm_acceleration_estimate(Vec3(0.2, 0, 0), 0.01).norm() == 0.0);
    CHECK(st.arm_acceleration_estimate(Vec3(0.2, 0, 0), 0.01).norm() == 0.0);

    st.reset();
    Vec3 a;
    for (int k = 0; k < 50; ++k) a = st.arm_acceleration_estimate(Vec3(0, 0, k * 0.01), 0.01);
    CHECK(std::abs(a.z() - 1.0) < 1e-9);

    st.reset();
    const double f = 2.0;
    double peak = 0.0;
    for (int k = 0; k < 400; ++k) {
      const Vec3 v(std::sin(2 * kPi * f * k * 0.01), 0, 0);
      const double d = st.arm_acceleration_estimate(v, 0.01).x();
      if (k > 100) peak = std::max(peak, std::abs(d));
    }
    CHECK(std::abs(peak / (2 * kPi * f) - 1.0) < 0.01);
  }

  TEST_CASE("end-effector force") {
    CHECK(end_effector_force(RotMat::Identity(), Vec3::Zero(), 0.4).norm() == 0.0);
    CHECK((end_effector_force(RotMat::Identity(), Vec3(0, 0, 0.3 * 9.81), 0.4) -
           Vec3(0, 0, 1.1772))
              .norm() < 1e-12);
    CHECK((end_effector_force(rot_z(kPi / 2), Vec3(1, 0, 0), 0.2) - Vec3(0, 0.2, 0)).norm() <
          1e-15);
  }

  TEST_CASE("high-frequency torque") {
    CHECK(high_torque(Vec3::Zero(), Vec3(0.1, 0, 0)).norm() == 0.0);
    CHECK((high_torque(Vec3(0, 0, -1), Vec3(0.1, 0, 0)) - Vec3(0, 0.1, 0)).norm() < 1e-15);
    CHECK(high_torque(Vec3(0, 0, 2), Vec3(0, 0, 0.3)).norm() == 0.0);
  }

  TEST_CASE("matched high-pass cutoff equals the observer bandwidth") {
    CHECK(matched_highpass_cutoff(13.822, 1.3822) == Approx(10.0 / (2 * kPi)));
  }

  TEST_CASE("high-frequency estimator reacts against payload motion") {
    HighFrequencyEstimator hf(1.0, 0.4);
    HighFrequencyEstimate est;
    // Arm accelerating downward at 2 m/s^2 for a short burst.
    for (int k = 0; k < 5; ++k) {
      est = hf.step(Vec3(0, 0, -0.02 * k), RotMat::Identity(), RotMat::Identity(),
                    Vec3(0.05, 0, -0.2), 0.01);
    }
    CHECK(est.a_arm.z() == Approx(-2.0));
    CHECK(est.f_end.z() == Approx(-0.8));
    // Jump of 0.8 on the second sample, then three samples of decay.
    const double k = std::tan(kPi * 1.0 * 0.01);
    CHECK(est.f_high.z() == Approx(0.8 / (1 + k) * std::pow((1 - k) / (1 + k), 3)));
    CHECK((est.tau_high - high_torque(est.f_high, Vec3(0.05, 0, -0.2))).norm() < 1e-15);
  }
}
