#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "silsbm/fitting.hpp"

using namespace silsbm;

namespace {

struct Synthetic {
    std::vector<double> t, y;
};

Synthetic damped_cosine(double a, double gamma, double omega, double phi, double c, int n,
                        double t_max, double t0 = 0.0) {
    Synthetic s;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + t_max * i / static_cast<double>(n - 1);
        s.t.push_back(t);
        s.y.push_back(a * std::exp(-gamma * (t - t0)) * std::cos(omega * (t - t0) + phi) + c);
    }
    return s;
}

}  // namespace

TEST_CASE("recovers synthetic damped-cosine parameters to 1e-6 relative") {
    const Synthetic s = damped_cosine(1.0, 0.1, 2.0, 0.0, 0.0, 200, 20.0);
    const DampedFit fit = fit_damped_cosine(s.t, s.y, {0.0, 20.0});
    REQUIRE(fit.converged);
    CHECK(fit.omega == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(fit.gamma == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(fit.offset) < 1e-7);
    CHECK(fit.residual_rms < 1e-8);
    CHECK(quality_of(fit) == doctest::Approx(20.0).epsilon(1e-5));
}

TEST_CASE("pure exponential decays to omega ~ 0 and Q ~ 0") {
    std::vector<double> t, y;
    for (int i = 0; i < 300; ++i) {
        t.push_back(12.0 * i / 299.0);
        y.push_back(0.8 * std::exp(-0.35 * t.back()));
    }
    const DampedFit fit = fit_damped_cosine(t, y, {0.0, 12.0});
    REQUIRE(fit.converged);
    CHECK(fit.residual_rms < 1e-6);
    // any residual oscillation frequency must be tiny relative to the decay
    CHECK(quality_of(fit) < 0.05);
}

TEST_CASE("constant series is flagged degenerate") {
    std::vector<double> t, y;
    for (int i = 0; i < 50; ++i) {
        t.push_back(i * 0.1);
        y.push_back(0.42);
    }
    const DampedFit fit = fit_damped_cosine(t, y, {0.0, 10.0});
    CHECK(fit.converged);
    CHECK(fit.degenerate);
    CHECK(fit.omega == 0.0);
    CHECK(fit.gamma == 0.0);
    CHECK(fit.offset == doctest::Approx(0.42));
}

TEST_CASE("scale equivariance: y -> c y scales only the amplitude") {
    const Synthetic s = damped_cosine(0.7, 0.2, 1.3, 0.4, 0.1, 250, 15.0);
    std::vector<double> scaled(s.y);
    for (double& v : scaled) v *= 3.5;
    const DampedFit base = fit_damped_cosine(s.t, s.y, {0.0, 15.0});
    const DampedFit big = fit_damped_cosine(s.t, scaled, {0.0, 15.0});
    REQUIRE(base.converged);
    REQUIRE(big.converged);
    CHECK(big.omega == doctest::Approx(base.omega).epsilon(1e-8));
    CHECK(big.gamma == doctest::Approx(base.gamma).epsilon(1e-8));
    CHECK(big.amplitude == doctest::Approx(3.5 * base.amplitude).epsilon(1e-8));
    CHECK(quality_of(big) == doctest::Approx(quality_of(base)).epsilon(1e-8));
}

TEST_CASE("time shift changes only the phase") {
    const double a = 1.0, gamma = 0.15, omega = 1.8, phi = 0.3, c = 0.05;
    const Synthetic s = damped_cosine(a, gamma, omega, phi, c, 300, 18.0);
    Synthetic shifted = s;
    const double t0 = 2.5;
    for (double& t : shifted.t) t += t0;
    const DampedFit base = fit_damped_cosine(s.t, s.y, {0.0, 18.0});
    const DampedFit moved = fit_damped_cosine(shifted.t, shifted.y, {t0, 18.0 + t0});
    REQUIRE(base.converged);
    REQUIRE(moved.converged);
    CHECK(moved.omega == doctest::Approx(base.omega).epsilon(1e-7));
    CHECK(moved.gamma == doctest::Approx(base.gamma).epsilon(1e-6));
    // the model in shifted time absorbs (gamma t0) into the amplitude and
    // (omega t0) into the phase
    const double expected_phase =
        std::remainder(base.phase - omega * t0, 2.0 * 3.14159265358979323846);
    CHECK(std::remainder(moved.phase - expected_phase, 2.0 * 3.14159265358979323846) ==
          doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("too few samples in the window is an error") {
    const Synthetic s = damped_cosine(1.0, 0.1, 2.0, 0.0, 0.0, 200, 20.0);
    CHECK_THROWS_AS(fit_damped_cosine(s.t, s.y, {0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("quality factor guards") {
    DampedFit fit;
    fit.converged = false;
    CHECK_THROWS_AS(quality_of(fit), std::invalid_argument);
    fit.converged = true;
    fit.omega = 2.0;
    fit.gamma = 0.0;
    CHECK(std::isinf(quality_of(fit)));
    fit.gamma = 0.1;
    CHECK(quality_of(fit) == doctest::Approx(20.0));
}
