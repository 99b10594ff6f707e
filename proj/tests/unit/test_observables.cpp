#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "silsbm/errors.hpp"
#include "silsbm/observables.hpp"
#include "support/reference.hpp"

using namespace silsbm;

namespace {

StateVector basis_state(const BasisTable& table, const BasisConfig& config) {
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(table.dimension()));
    psi[static_cast<Eigen::Index>(table.index_of(config))] = 1.0;
    return psi;
}

}  // namespace

TEST_CASE("partial trace of product, superposition and entangled states") {
    const auto table = enumerate_basis(2, 1);
    const BasisConfig up_vac{+1, {0, 0}};
    const BasisConfig down_vac{-1, {0, 0}};

    SUBCASE("pure product |z;+> ⊗ vacuum") {
        const QubitDensity rho = reduce_to_qubit(basis_state(table, up_vac), table);
        CHECK(std::abs(rho(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(rho(1, 1)) < 1e-15);
        CHECK(purity(rho) == doctest::Approx(1.0));
        const Vec3 b = bloch_vector(rho);
        CHECK(b[2] == doctest::Approx(1.0));
    }

    SUBCASE("equal spin superposition over the same bath state") {
        const StateVector psi =
            (basis_state(table, up_vac) + basis_state(table, down_vac)) / std::sqrt(2.0);
        const QubitDensity rho = reduce_to_qubit(psi, table);
        CHECK(std::abs(rho(0, 1) - Complex(0.5, 0.0)) < 1e-15);
        const Vec3 b = bloch_vector(rho);
        CHECK(b[0] == doctest::Approx(1.0));
        CHECK(b[2] == doctest::Approx(0.0));
    }

    SUBCASE("maximally entangled spin-boson pair reduces to I/2") {
        const BasisConfig down_one{-1, {1, 0}};
        const StateVector psi =
            (basis_state(table, up_vac) + basis_state(table, down_one)) / std::sqrt(2.0);
        const QubitDensity rho = reduce_to_qubit(psi, table);
        CHECK(std::abs(rho(0, 0) - 0.5) < 1e-15);
        CHECK(std::abs(rho(1, 1) - 0.5) < 1e-15);
        CHECK(std::abs(rho(0, 1)) < 1e-15);
        const Vec3 b = bloch_vector(rho);
        CHECK(std::abs(b[0]) + std::abs(b[1]) + std::abs(b[2]) < 1e-14);
        CHECK(purity(rho) == doctest::Approx(0.5));
    }
}

TEST_CASE("bloch vector of pure |x;+>") {
    QubitDensity rho;
    rho << 0.5, 0.5, 0.5, 0.5;
    const Vec3 b = bloch_vector(rho);
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[1] == doctest::Approx(0.0));
    CHECK(b[2] == doctest::Approx(0.0));
}

TEST_CASE("mode occupations: vacuum, single photon, and the budget bound") {
    const auto table = enumerate_basis(3, 2);
    const BathModes modes = discretize({0.2, 1.0, 5.0, 3});

    const StateVector vac = basis_state(table, {+1, {0, 0, 0}});
    for (double n : mode_occupations(vac, table)) CHECK(n == 0.0);
    CHECK(bath_energy(vac, table, modes) == 0.0);

    const StateVector one = basis_state(table, {-1, {0, 1, 0}});
    const auto occ = mode_occupations(one, table);
    CHECK(occ[0] == 0.0);
    CHECK(occ[1] == doctest::Approx(1.0));
    CHECK(occ[2] == 0.0);
    CHECK(bath_energy(one, table, modes) == doctest::Approx(modes.omegas[1]));

    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = testref::random_state(static_cast<int>(table.dimension()), rng);
        const auto random_occ = mode_occupations(psi, table);
        double total = 0.0;
        for (double n : random_occ) total += n;
        CHECK(total <= 2.0 + 1e-12);  // budget bound N = 2
    }
}

TEST_CASE("bath energy agrees with the sparse quadratic form") {
    const auto table = std::make_shared<BasisTable>(enumerate_basis(3, 2));
    const BathModes modes = discretize({0.3, 1.0, 5.0, 3});
    const auto h = SparseHamiltonian::build(table, modes, CouplingAxis::Z);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector psi = testref::random_state(static_cast<int>(table->dimension()), rng);
        CHECK(std::abs(bath_energy(psi, *table, modes) - h.expect_bath(psi)) <= 1e-12);
    }
}

TEST_CASE("fidelity trivials and the degenerate gap error") {
    const auto schedule = FieldSchedule::static_field(0.0, 1.0);  // field along +z
    QubitDensity ground = QubitDensity::Zero(), excited = QubitDensity::Zero();
    ground(0, 0) = 1.0;
    excited(1, 1) = 1.0;
    CHECK(fidelity(ground, schedule, 0.0) == doctest::Approx(1.0));
    CHECK(fidelity(excited, schedule, 0.0) == doctest::Approx(0.0));
    CHECK(fidelity(0.5 * QubitDensity::Identity(), schedule, 0.0) == doctest::Approx(0.5));

    const auto degenerate = FieldSchedule::static_field(0.0, 0.0);
    CHECK_THROWS_AS(fidelity(ground, degenerate, 0.0), NumericalError);
    CHECK_THROWS_AS(excess_energy(ground, degenerate, 0.0), NumericalError);
}

TEST_CASE("ground state is the lower eigenvector for generic fields") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const Vec3 f{dist(rng), dist(rng), dist(rng)};
        const double norm = std::hypot(f[0], f[1], f[2]);
        if (norm < 1e-3) continue;
        Eigen::Matrix2cd hs;
        hs << -0.5 * f[2], -0.5 * Complex(f[0], -f[1]), -0.5 * Complex(f[0], f[1]), 0.5 * f[2];
        const Eigen::Vector2cd gs = qubit_ground_state(f);
        const Complex rayleigh = (gs.adjoint() * hs * gs)(0, 0);
        CHECK(rayleigh.real() == doctest::Approx(-0.5 * norm).epsilon(1e-12));
    }
}

TEST_CASE("excess energy: ground projector gives zero, identity path agrees") {
    const auto sweep = FieldSchedule::rotating_sweep(1.0, 0.0, 0.0, 10.0);
    const Eigen::Vector2cd gs = qubit_ground_state(field_at(sweep, 10.0));
    const QubitDensity ground = gs * gs.adjoint();
    CHECK(excess_energy(ground, sweep, 10.0) == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto draw = [&]() { return Complex(dist(rng), dist(rng)); };
    for (int trial = 0; trial < 20; ++trial) {
        // random mixed qubit state
        Eigen::Matrix2cd a;
        a << draw(), draw(), draw(), draw();
        QubitDensity rho = a * a.adjoint();
        rho /= rho.trace();
        const double t = 10.0 * (trial + 1) / 21.0;
        CHECK(excess_energy(rho, sweep, t) ==
              doctest::Approx(excess_energy_from_fidelity(rho, sweep, t)).epsilon(1e-10));
    }
}
