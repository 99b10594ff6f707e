// propagator.hpp — short-iterative-Lanczos time stepping
//
// One step over [t, t+dt] projects H evaluated at the interval midpoint onto
// the Krylov subspace span{psi, H psi, ...} built by Lanczos recursion with
// optional full reorthogonalization, exponentiates the small tridiagonal
// matrix exactly via its eigendecomposition, and lifts the result back.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "silsbm/hamiltonian.hpp"

namespace silsbm {

struct SILParams {
    double dt = 0.0;              // target step size, > 0
    int krylov_dim = 12;          // subspace dimension n, in [2, 64]
    double breakdown_tol = 1e-13; // happy-breakdown residual threshold
    bool reorthogonalize = true;

    void validate() const;
};

// out = H(t) * psi; out is sized by the callee.
using HamiltonianAction = std::function<void(double t, const StateVector& psi, StateVector& out)>;

// Invoked at each requested sample time with the current (normalized) state.
using SampleHook = std::function<void(double t, const StateVector& psi)>;

struct KrylovDecomposition {
    std::vector<StateVector> vectors;  // orthonormal Lanczos vectors, size m
    std::vector<double> alpha;         // diagonal of the projected H, size m
    std::vector<double> beta;          // subdiagonal, size m-1
    bool breakdown = false;            // subspace closed before krylov_dim
    double residual = 0.0;             // last Lanczos residual norm
};

// Reusable step buffers; a propagation allocates the Krylov basis once
// instead of every step.
struct KrylovWorkspace {
    std::vector<StateVector> vectors;
    std::vector<double> alpha, beta;
    StateVector w;
};

// Lanczos basis of span{psi, H(t) psi, ...}; psi need not be normalized.
KrylovDecomposition build_krylov(const StateVector& psi, double t, const HamiltonianAction& h,
                                 const SILParams& params);

struct StepInfo {
    int subspace_dim = 0;
    bool breakdown = false;
    double norm_drift = 0.0;  // | ||psi'|| - ||psi|| | of the accepted step
};

// Advance psi in place across [t, t+dt] using H frozen at t+dt/2.
// dt may differ from params.dt (used to land exactly on sample times).
StepInfo krylov_step(StateVector& psi, double t, double dt, const SILParams& params,
                     const HamiltonianAction& h);
StepInfo krylov_step(StateVector& psi, double t, double dt, const SILParams& params,
                     const HamiltonianAction& h, KrylovWorkspace& workspace);

struct PropagationReport {
    std::size_t steps = 0;
    double max_norm_drift = 0.0;  // max per-step | ||psi|| - 1 |
    int renormalizations = 0;
};

inline constexpr double kRenormThreshold = 1e-10;
inline constexpr double kNormAbortThreshold = 1e-6;

// Step psi from t0 to t_end, invoking hook at each time in sample_times
// (sorted, within [t0, t_end]). Steps are shortened so every sample time is
// hit exactly. Norm drift beyond kRenormThreshold is corrected and counted;
// drift beyond kNormAbortThreshold aborts with NumericalError.
PropagationReport propagate(StateVector& psi, double t0, double t_end, const SILParams& params,
                            const HamiltonianAction& h, std::span<const double> sample_times,
                            const SampleHook& hook);

}  // namespace silsbm
