// protocols.hpp — experiment configuration and the two driving protocols:
// (A) static-field quench from |z;+> ⊗ vacuum, (B) rotating-field sweep with
// coupling axis z or x. Plus the (tf, alpha) scan harness.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "silsbm/bath.hpp"
#include "silsbm/fock_basis.hpp"
#include "silsbm/hamiltonian.hpp"
#include "silsbm/observables.hpp"
#include "silsbm/propagator.hpp"

namespace silsbm {

struct SamplingSpec {
    int n_samples = 301;  // equally spaced over the run window, endpoints included
    std::vector<double> mode_snapshot_times;  // per-mode <n_k> recorded at these times
};

// Fully deterministic run description (no random state anywhere).
struct ExperimentConfig {
    ScheduleKind kind = ScheduleKind::Static;

    BathSpec bath;        // alpha, s, omega_c, modes
    int modes = 0;        // must agree with bath.modes
    int nph = 0;          // excitation budget

    double delta = 1.0;   // static tunnelling (static runs)
    double h0 = 0.0;      // static bias
    double h = 1.0;       // drive amplitude (sweeps)
    double tf = 0.0;      // sweep duration; sweeps start at t0 = 0
    double t_end = 0.0;   // static-run horizon

    CouplingAxis axis = CouplingAxis::Z;
    SILParams sil{};      // sil.dt == 0 resolves to the default 0.02/omega_c
    SamplingSpec sampling{};
    std::size_t max_dimension = kDefaultMaxDimension;

    void validate() const;
    FieldSchedule schedule() const;
    double time_horizon() const { return kind == ScheduleKind::Static ? t_end : tf; }
    SILParams resolved_sil() const;  // with the dt default applied
};

// |z;+> ⊗ vacuum — amplitude 1 on the first enumerated state.
StateVector initial_state(const BasisTable& table);

struct RunResult {
    Trajectory trajectory;
    std::size_t dimension = 0;
    double delta_r = 0.0;    // renormalized gap for the run's energy scale
    double delta_eff = 0.0;
    // end-of-sweep scalars (sweeps only)
    std::optional<double> excess;
    std::optional<double> fidelity;
};

RunResult run_sbm(const ExperimentConfig& config);
RunResult run_sweep(const ExperimentConfig& config);
RunResult run_experiment(const ExperimentConfig& config);  // dispatch on kind

struct ScanCell {
    double tf = 0.0;
    double alpha = 0.0;
    double excess = 0.0;
    double fidelity = 0.0;
    bool ok = false;
    std::string error;  // empty when ok
};

struct ScanTable {
    std::vector<ScanCell> cells;  // sorted by (alpha, tf)
};

// One independent sweep per (alpha, tf) grid cell. Cells run concurrently on
// `workers` threads; assembly order depends only on the grid, not completion
// order. Per-cell failures are recorded and the scan continues.
ScanTable sweep_scan(const ExperimentConfig& base, std::span<const double> tf_grid,
                     std::span<const double> alpha_grid, int workers = 1);

}  // namespace silsbm
