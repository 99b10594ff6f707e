#include <doctest.h>

#include <cmath>

#include "silsbm/errors.hpp"
#include "silsbm/oracles.hpp"
#include "silsbm/protocols.hpp"

using namespace silsbm;

namespace {

ExperimentConfig static_config(int modes, int nph, double alpha, double h0, double t_end) {
    ExperimentConfig config;
    config.kind = ScheduleKind::Static;
    config.bath = {alpha, 1.0, 5.0, modes};
    config.modes = modes;
    config.nph = nph;
    config.delta = 1.0;
    config.h0 = h0;
    config.t_end = t_end;
    return config;
}

ExperimentConfig sweep_config(int modes, int nph, double alpha, double tf) {
    ExperimentConfig config;
    config.kind = ScheduleKind::RotatingSweep;
    config.bath = {alpha, 1.0, 5.0, modes};
    config.modes = modes;
    config.nph = nph;
    config.h = 1.0;
    config.h0 = 0.0;
    config.tf = tf;
    return config;
}

}  // namespace

TEST_CASE("initial state is the one-hot |z;+> ⊗ vacuum") {
    const auto table = enumerate_basis(4, 2);
    const StateVector psi = initial_state(table);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(psi[0] == Complex(1.0, 0.0));
    const QubitDensity rho = reduce_to_qubit(psi, table);
    CHECK(bloch_vector(rho)[2] == doctest::Approx(1.0));
    const BathModes modes = discretize({0.1, 1.0, 5.0, 4});
    CHECK(bath_energy(psi, table, modes) == 0.0);
}

TEST_CASE("decoupled unbiased quench is an exact Rabi oscillation") {
    ExperimentConfig config = static_config(3, 1, 0.0, 0.0, 6.0);
    config.sampling.n_samples = 25;
    const RunResult result = run_sbm(config);
    CHECK(result.delta_r == doctest::Approx(1.0));
    for (const TrajectorySample& s : result.trajectory.samples) {
        CHECK(s.bloch[2] == doctest::Approx(std::cos(s.t)).epsilon(1e-8));
        CHECK(s.bath_energy == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("static run conserves total energy and reports the rescaled time unit") {
    ExperimentConfig config = static_config(6, 2, 0.3, 0.4, 5.0);
    config.sampling.n_samples = 21;
    const RunResult result = run_sbm(config);
    CHECK(result.trajectory.time_scale ==
          doctest::Approx(oracles::renormalized_gaps(0.3, 1.0, 5.0).delta_r));
    const double e0 = result.trajectory.samples.front().total_energy;
    for (const TrajectorySample& s : result.trajectory.samples)
        CHECK(s.total_energy == doctest::Approx(e0).epsilon(1e-8));
    CHECK(result.trajectory.report.max_norm_drift <= 1e-10);
}

TEST_CASE("energy bookkeeping: qubit + bath + interaction equals the initial energy") {
    const auto table = std::make_shared<BasisTable>(enumerate_basis(5, 2));
    const BathModes modes = discretize({0.25, 1.0, 5.0, 5});
    const auto h = SparseHamiltonian::build(table, modes, CouplingAxis::Z);
    const auto schedule = FieldSchedule::static_field(1.0, 0.3);

    StateVector psi = initial_state(*table);
    const double e0 = h.expect_total(schedule, 0.0, psi);
    SILParams params{0.004, 12, 1e-13, true};
    HamiltonianAction action = [&](double t, const StateVector& x, StateVector& out) {
        h.apply(schedule, t, x, out);
    };
    std::vector<double> samples{1.0, 2.0, 3.0, 4.0};
    SampleHook hook = [&](double t, const StateVector& state) {
        const Vec3 field = field_at(schedule, t);
        const double sum = h.expect_qubit(field, state) + h.expect_bath(state) +
                           h.expect_interaction(state);
        CHECK(sum == doctest::Approx(e0).epsilon(1e-8));
        const QubitDensity rho = reduce_to_qubit(state, *table);
        const double p = purity(rho);
        CHECK(p >= 0.5 - 1e-9);
        CHECK(p <= 1.0 + 1e-9);
    };
    propagate(psi, 0.0, 4.0, params, action, samples, hook);
}

TEST_CASE("decoupled sweep reproduces the closed-form excess energy") {
    ExperimentConfig config = sweep_config(3, 1, 0.0, 8.42);
    config.sil.dt = 8.42 / 40000.0;
    config.sampling.n_samples = 2;
    const RunResult result = run_sweep(config);
    REQUIRE(result.excess.has_value());
    CHECK(*result.excess ==
          doctest::Approx(oracles::closed_excess_energy(8.42, 1.0)).epsilon(1e-7));
    CHECK(*result.fidelity ==
          doctest::Approx(1.0 - oracles::closed_excess_energy(8.42, 1.0)).epsilon(1e-7));
}

TEST_CASE("sweep scalars satisfy the fidelity identity") {
    ExperimentConfig config = sweep_config(4, 2, 0.15, 5.0);
    const RunResult result = run_sweep(config);
    // eres = |h - h0| (1 - F) at the end of the sweep
    CHECK(*result.excess == doctest::Approx(1.0 * (1.0 - *result.fidelity)).epsilon(1e-10));
}

TEST_CASE("1x1 scan reduces to run_sweep and grids are order-independent") {
    ExperimentConfig base = sweep_config(3, 1, 0.0, 1.0);

    const std::vector<double> tf_one{4.2};
    const std::vector<double> alpha_one{0.1};
    const ScanTable single = sweep_scan(base, tf_one, alpha_one, 1);
    REQUIRE(single.cells.size() == 1);
    REQUIRE(single.cells[0].ok);

    ExperimentConfig direct = base;
    direct.bath.alpha = 0.1;
    direct.tf = 4.2;
    const RunResult reference = run_sweep(direct);
    CHECK(single.cells[0].excess == *reference.excess);  // bitwise identical path
    CHECK(single.cells[0].fidelity == *reference.fidelity);

    const std::vector<double> tf_grid{2.0, 4.0, 6.0};
    const std::vector<double> alpha_grid{0.0, 0.1};
    const std::vector<double> tf_permuted{6.0, 2.0, 4.0};
    const std::vector<double> alpha_permuted{0.1, 0.0};
    const ScanTable forward = sweep_scan(base, tf_grid, alpha_grid, 2);
    const ScanTable permuted = sweep_scan(base, tf_permuted, alpha_permuted, 1);
    REQUIRE(forward.cells.size() == permuted.cells.size());
    for (std::size_t i = 0; i < forward.cells.size(); ++i) {
        CHECK(forward.cells[i].alpha == permuted.cells[i].alpha);
        CHECK(forward.cells[i].tf == permuted.cells[i].tf);
        CHECK(forward.cells[i].excess == permuted.cells[i].excess);
        CHECK(forward.cells[i].fidelity == permuted.cells[i].fidelity);
    }
}

TEST_CASE("alpha = 0 scan column matches the closed form across the grid") {
    ExperimentConfig base = sweep_config(3, 1, 0.0, 1.0);
    base.sil.dt = 0.0005;
    std::vector<double> tf_grid;
    for (int i = 0; i < 8; ++i) tf_grid.push_back(1.0 + 1.5 * i);
    const std::vector<double> alpha_grid{0.0};
    const ScanTable table = sweep_scan(base, tf_grid, alpha_grid, 2);
    for (const ScanCell& cell : table.cells) {
        REQUIRE(cell.ok);
        CHECK(cell.excess ==
              doctest::Approx(oracles::closed_excess_energy(cell.tf, 1.0)).epsilon(5e-6));
    }
}

TEST_CASE("scan records per-cell failures and continues") {
    ExperimentConfig base = sweep_config(3, 1, 0.0, 1.0);
    const std::vector<double> tf_grid{-1.0, 2.0};  // negative tf fails validation
    const std::vector<double> alpha_grid{0.0};
    const ScanTable table = sweep_scan(base, tf_grid, alpha_grid, 1);
    REQUIRE(table.cells.size() == 2);
    CHECK_FALSE(table.cells[0].ok);
    CHECK(!table.cells[0].error.empty());
    CHECK(table.cells[1].ok);
}

TEST_CASE("config validation catches inconsistent shapes") {
    ExperimentConfig config = static_config(4, 2, 0.1, 0.0, 5.0);
    config.bath.modes = 5;  // disagree with basis modes
    CHECK_THROWS_AS(config.validate(), ConfigError);

    ExperimentConfig sweep = sweep_config(3, 1, 0.0, -2.0);
    CHECK_THROWS_AS(sweep.validate(), ConfigError);

    ExperimentConfig big = static_config(50, 6, 0.1, 0.0, 5.0);
    CHECK_THROWS_AS(big.validate(), CapacityError);
}
