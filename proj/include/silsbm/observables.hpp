// observables.hpp — quantities extracted from the joint qubit+bath state:
// reduced density matrix, Bloch vector, mode occupations, bath energy,
// fidelity against the instantaneous qubit ground state, excess energy.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "silsbm/hamiltonian.hpp"
#include "silsbm/propagator.hpp"

namespace silsbm {

using QubitDensity = Eigen::Matrix2cd;

// Partial trace over the bath; uses the contiguous spin-block layout.
QubitDensity reduce_to_qubit(const StateVector& psi, const BasisTable& table);

// (Tr[rho sigma_x], Tr[rho sigma_y], Tr[rho sigma_z])
Vec3 bloch_vector(const QubitDensity& rho);

double purity(const QubitDensity& rho);

// <n_k> per mode; at T=0 the reference occupations vanish so this is <Δn_k>.
std::vector<double> mode_occupations(const StateVector& psi, const BasisTable& table);

// sum_k w_k <n_k>
double bath_energy(const StateVector& psi, const BasisTable& table, const BathModes& modes);

// Analytic ground state of H_S = -1/2 field·sigma; throws NumericalError when
// |field| vanishes (degenerate gap).
Eigen::Vector2cd qubit_ground_state(const Vec3& field);

// F = <gs(t)| rho |gs(t)>, clamped into [0, 1].
double fidelity(const QubitDensity& rho, const FieldSchedule& schedule, double t);

// eps = Tr[rho H_S(t)] - E_gs(t) >= 0. For the sweep protocol at t = tf this
// equals |h - h0| (1 - F); the identity is kept as a separate code path for
// cross-checking, see excess_energy_from_fidelity.
double excess_energy(const QubitDensity& rho, const FieldSchedule& schedule, double t);
double excess_energy_from_fidelity(const QubitDensity& rho, const FieldSchedule& schedule,
                                   double t);

struct TrajectorySample {
    double t = 0.0;
    Vec3 bloch{0.0, 0.0, 0.0};
    double bath_energy = 0.0;
    double total_energy = 0.0;
    double norm = 1.0;
};

struct ModeSnapshot {
    double t = 0.0;
    std::vector<double> occupations;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<ModeSnapshot> mode_snapshots;
    double time_scale = 1.0;  // renormalized gap; rescaled time axis is t * time_scale
    PropagationReport report;
};

}  // namespace silsbm
