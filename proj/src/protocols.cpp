#include "silsbm/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "silsbm/errors.hpp"
#include "silsbm/oracles.hpp"

namespace silsbm {

void ExperimentConfig::validate() const {
    bath.validate();
    if (modes != bath.modes)
        throw ConfigError("basis modes (" + std::to_string(modes) + ") != bath modes (" +
                          std::to_string(bath.modes) + ")");
    if (nph < 0 || nph > kMaxExcitations)
        throw ConfigError("nph must be in [0, " + std::to_string(kMaxExcitations) + "]");
    if (kind == ScheduleKind::Static) {
        if (!(t_end > 0.0)) throw ConfigError("static runs require t_end > 0");
    } else {
        if (!(tf > 0.0)) throw ConfigError("sweep runs require tf > 0");
        if (!(h != 0.0)) throw ConfigError("sweep runs require h != 0");
    }
    if (sampling.n_samples < 2) throw ConfigError("n_samples must be >= 2");
    for (double t : sampling.mode_snapshot_times)
        if (t < 0.0 || t > time_horizon())
            throw ConfigError("mode snapshot time " + std::to_string(t) +
                              " outside the run window");
    resolved_sil().validate();

    const long double estimate = truncated_dimension_estimate(modes, nph);
    if (estimate > static_cast<long double>(max_dimension))
        throw CapacityError("configuration needs " +
                            std::to_string(static_cast<double>(estimate)) +
                            " basis states, above the ceiling of " +
                            std::to_string(max_dimension));
}

FieldSchedule ExperimentConfig::schedule() const {
    if (kind == ScheduleKind::Static) return FieldSchedule::static_field(delta, h0);
    return FieldSchedule::rotating_sweep(h, h0, 0.0, tf);
}

SILParams ExperimentConfig::resolved_sil() const {
    SILParams p = sil;
    if (p.dt == 0.0) p.dt = 0.02 / bath.omega_c;
    return p;
}

StateVector initial_state(const BasisTable& table) {
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(table.dimension()));
    // vacuum is the lexicographically first bath config; spin +1 is block 0
    psi[0] = Complex(1.0, 0.0);
    return psi;
}

namespace {

struct RunContext {
    std::shared_ptr<const BasisTable> table;
    BathModes modes;
    SparseHamiltonian hamiltonian;
};

RunContext make_context(const ExperimentConfig& config) {
    RunContext ctx;
    ctx.table = std::make_shared<BasisTable>(
        enumerate_basis(config.modes, config.nph, config.max_dimension));
    ctx.modes = discretize(config.bath);
    ctx.hamiltonian = SparseHamiltonian::build(ctx.table, ctx.modes, config.axis);
    return ctx;
}

Trajectory propagate_and_sample(const ExperimentConfig& config, const RunContext& ctx,
                                StateVector& psi) {
    const FieldSchedule schedule = config.schedule();
    const SILParams sil = config.resolved_sil();
    const double t_end = config.time_horizon();

    std::vector<double> sample_times(config.sampling.n_samples);
    for (int i = 0; i < config.sampling.n_samples; ++i)
        sample_times[i] = t_end * static_cast<double>(i) /
                          static_cast<double>(config.sampling.n_samples - 1);

    std::vector<double> snapshot_times = config.sampling.mode_snapshot_times;
    std::sort(snapshot_times.begin(), snapshot_times.end());

    // Event list: union of sample and snapshot times, deduplicated.
    std::vector<double> events = sample_times;
    events.insert(events.end(), snapshot_times.begin(), snapshot_times.end());
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    Trajectory trajectory;
    trajectory.samples.reserve(sample_times.size());
    auto is_listed = [](const std::vector<double>& sorted, double t) {
        return std::binary_search(sorted.begin(), sorted.end(), t);
    };

    HamiltonianAction action = [&](double t, const StateVector& x, StateVector& out) {
        ctx.hamiltonian.apply(schedule, t, x, out);
    };
    SampleHook hook = [&](double t, const StateVector& state) {
        if (is_listed(sample_times, t)) {
            TrajectorySample s;
            s.t = t;
            s.norm = state.norm();
            s.bloch = bloch_vector(reduce_to_qubit(state, *ctx.table));
            s.bath_energy = ctx.hamiltonian.expect_bath(state);
            s.total_energy = ctx.hamiltonian.expect_total(schedule, t, state);
            trajectory.samples.push_back(s);
        }
        if (is_listed(snapshot_times, t))
            trajectory.mode_snapshots.push_back({t, mode_occupations(state, *ctx.table)});
    };

    trajectory.report = propagate(psi, 0.0, t_end, sil, action, events, hook);
    return trajectory;
}

double energy_scale(const ExperimentConfig& config) {
    return config.kind == ScheduleKind::Static ? config.delta : config.h;
}

RunResult run_common(const ExperimentConfig& config) {
    config.validate();
    RunContext ctx = make_context(config);
    StateVector psi = initial_state(*ctx.table);

    RunResult result;
    result.dimension = ctx.table->dimension();
    const auto gaps =
        oracles::renormalized_gaps(config.bath.alpha, energy_scale(config), config.bath.omega_c);
    result.delta_r = gaps.delta_r;
    result.delta_eff = gaps.delta_eff;

    result.trajectory = propagate_and_sample(config, ctx, psi);
    result.trajectory.time_scale = gaps.delta_r;

    if (config.kind == ScheduleKind::RotatingSweep) {
        const QubitDensity rho = reduce_to_qubit(psi, *ctx.table);
        const FieldSchedule schedule = config.schedule();
        result.excess = excess_energy(rho, schedule, config.tf);
        result.fidelity = fidelity(rho, schedule, config.tf);
    }
    return result;
}

}  // namespace

RunResult run_sbm(const ExperimentConfig& config) {
    if (config.kind != ScheduleKind::Static)
        throw ConfigError("run_sbm requires a static schedule");
    return run_common(config);
}

RunResult run_sweep(const ExperimentConfig& config) {
    if (config.kind != ScheduleKind::RotatingSweep)
        throw ConfigError("run_sweep requires a rotating sweep schedule");
    return run_common(config);
}

RunResult run_experiment(const ExperimentConfig& config) {
    return config.kind == ScheduleKind::Static ? run_sbm(config) : run_sweep(config);
}

ScanTable sweep_scan(const ExperimentConfig& base, std::span<const double> tf_grid,
                     std::span<const double> alpha_grid, int workers) {
    if (tf_grid.empty() || alpha_grid.empty())
        throw ConfigError("scan grids must be non-empty");
    if (workers < 1) throw ConfigError("scan requires workers >= 1");

    struct Cell {
        double alpha, tf;
    };
    std::vector<Cell> grid;
    grid.reserve(alpha_grid.size() * tf_grid.size());
    for (double a : alpha_grid)
        for (double tf : tf_grid) grid.push_back({a, tf});

    ScanTable table;
    table.cells.resize(grid.size());

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= grid.size()) return;
            ScanCell& cell = table.cells[i];
            cell.alpha = grid[i].alpha;
            cell.tf = grid[i].tf;
            try {
                ExperimentConfig config = base;
                config.kind = ScheduleKind::RotatingSweep;
                config.bath.alpha = grid[i].alpha;
                config.tf = grid[i].tf;
                const RunResult r = run_sweep(config);
                cell.excess = *r.excess;
                cell.fidelity = *r.fidelity;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
                cell.excess = std::nan("");
                cell.fidelity = std::nan("");
            }
        }
    };

    if (workers == 1 || grid.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int count = std::min<int>(workers, static_cast<int>(grid.size()));
        pool.reserve(count);
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::stable_sort(table.cells.begin(), table.cells.end(),
                     [](const ScanCell& a, const ScanCell& b) {
                         if (a.alpha != b.alpha) return a.alpha < b.alpha;
                         return a.tf < b.tf;
                     });
    return table;
}

}  // namespace silsbm
