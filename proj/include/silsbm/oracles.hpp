// oracles.hpp — closed-form and quadrature-based reference curves used as
// test oracles and CLI comparators: renormalized gaps, the exactly solvable
// alpha = 1/2 magnetization, weak-coupling magnetization curves, the
// damped-oscillation quality factor, and the dissipationless sweep solution.

#pragma once

#include <limits>

#include <Eigen/Dense>

#include "silsbm/hamiltonian.hpp"

namespace silsbm::oracles {

inline constexpr double kBetaInfinite = std::numeric_limits<double>::infinity();

struct Gaps {
    double delta_r;    // Delta (Delta/omega_c)^{alpha/(1-alpha)}
    double delta_eff;  // [Gamma(1-2a) cos(pi a)]^{1/(2(1-a))} * delta_r
};

// Requires 0 <= alpha < 1; delta_eff at alpha = 1/2 uses the analytic limit
// Gamma(1-2a) cos(pi a) -> pi/2.
Gaps renormalized_gaps(double alpha, double delta, double omega_c);

// <sigma_z(t)> at the exactly solvable coupling alpha = 1/2, decay rate
// gamma = pi Delta^2 / (2 omega_c). beta = kBetaInfinite selects the T=0
// integrand limit sin(h0 tau)/(pi tau). Adaptive quadrature, abs tol 1e-10.
double toulouse_sigma_z(double t, double h0, double beta, double delta, double omega_c);

struct WeakCoupling {
    double sigma_z;
    double sigma_x;
};

// First-order weak-coupling magnetizations at T=0, with
// Omega = sqrt(delta_r^2 + h0^2), gamma_r = pi alpha delta_r^2 / Omega.
WeakCoupling weak_coupling_curves(double t, double alpha, double delta, double h0, double omega_c);

// Q = cot(pi alpha / (2 (1-alpha))) for 0 < alpha < 1; +infinity as alpha -> 0.
double quality_factor(double alpha);

// Excess energy of the dissipationless sweep (h0 = 0), thdot = pi/tf:
//   (h thdot^2 / 2) (1 - cos(pi sqrt(h^2+thdot^2)/thdot)) / (h^2 + thdot^2)
double closed_excess_energy(double tf, double h);

// Exact dissipationless sweep state (h0 = 0, t0 = 0) from the rotating-frame
// propagator; spinor in the sigma_z basis, and its Bloch vector.
Eigen::Vector2cd closed_sweep_spinor(double t, double tf, double h);
Vec3 closed_sweep_state(double t, double tf, double h);

}  // namespace silsbm::oracles
