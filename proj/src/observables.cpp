#include "silsbm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "silsbm/errors.hpp"

namespace silsbm {

QubitDensity reduce_to_qubit(const StateVector& psi, const BasisTable& table) {
    if (static_cast<std::size_t>(psi.size()) != table.dimension())
        throw std::invalid_argument("state dimension does not match the basis table");
    const auto bd = static_cast<Eigen::Index>(table.bath_dimension());
    const auto up = psi.segment(0, bd);
    const auto down = psi.segment(bd, bd);
    QubitDensity rho;
    rho(0, 0) = up.squaredNorm();
    rho(1, 1) = down.squaredNorm();
    rho(0, 1) = down.dot(up);  // sum_b psi_up[b] conj(psi_down[b])
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

Vec3 bloch_vector(const QubitDensity& rho) {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

double purity(const QubitDensity& rho) { return (rho * rho).trace().real(); }

std::vector<double> mode_occupations(const StateVector& psi, const BasisTable& table) {
    if (static_cast<std::size_t>(psi.size()) != table.dimension())
        throw std::invalid_argument("state dimension does not match the basis table");
    const std::size_t bd = table.bath_dimension();
    std::vector<double> occ(table.modes(), 0.0);
    for (std::size_t b = 0; b < bd; ++b) {
        const double weight = std::norm(psi[static_cast<Eigen::Index>(b)]) +
                              std::norm(psi[static_cast<Eigen::Index>(b + bd)]);
        if (weight == 0.0) continue;
        auto counts = table.occupations(b);
        for (int k = 0; k < table.modes(); ++k)
            if (counts[k] != 0) occ[k] += weight * counts[k];
    }
    return occ;
}

double bath_energy(const StateVector& psi, const BasisTable& table, const BathModes& modes) {
    auto occ = mode_occupations(psi, table);
    double e = 0.0;
    for (int k = 0; k < table.modes(); ++k) e += modes.omegas[k] * occ[k];
    return e;
}

Eigen::Vector2cd qubit_ground_state(const Vec3& field) {
    const double norm = std::hypot(field[0], field[1], field[2]);
    if (norm <= 0.0)
        throw NumericalError("degenerate qubit gap: |field| = 0 has no unique ground state");
    // Ground state of -1/2 h·sigma is spin aligned with +h:
    // (cos(theta/2), e^{i phi} sin(theta/2)) in polar angles of h.
    const double cos_theta = std::clamp(field[2] / norm, -1.0, 1.0);
    const double theta = std::acos(cos_theta);
    const double phi = std::atan2(field[1], field[0]);
    Eigen::Vector2cd gs;
    gs(0) = std::cos(theta / 2.0);
    gs(1) = std::polar(std::sin(theta / 2.0), phi);
    return gs;
}

double fidelity(const QubitDensity& rho, const FieldSchedule& schedule, double t) {
    const Eigen::Vector2cd gs = qubit_ground_state(field_at(schedule, t));
    const double f = (gs.adjoint() * rho * gs)(0, 0).real();
    return std::clamp(f, 0.0, 1.0);
}

double excess_energy(const QubitDensity& rho, const FieldSchedule& schedule, double t) {
    const Vec3 f = field_at(schedule, t);
    const double gap = std::hypot(f[0], f[1], f[2]);
    if (gap <= 0.0)
        throw NumericalError("degenerate qubit gap: excess energy reference is undefined");
    const Vec3 r = bloch_vector(rho);
    const double energy = -0.5 * (f[0] * r[0] + f[1] * r[1] + f[2] * r[2]);
    return energy - (-0.5 * gap);
}

double excess_energy_from_fidelity(const QubitDensity& rho, const FieldSchedule& schedule,
                                   double t) {
    const Vec3 f = field_at(schedule, t);
    const double gap = std::hypot(f[0], f[1], f[2]);
    return gap * (1.0 - fidelity(rho, schedule, t));
}

}  // namespace silsbm
