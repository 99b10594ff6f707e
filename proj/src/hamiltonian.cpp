#include "silsbm/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "silsbm/errors.hpp"

namespace silsbm {

FieldSchedule FieldSchedule::static_field(double delta, double h0) {
    FieldSchedule s;
    s.kind = ScheduleKind::Static;
    s.delta = delta;
    s.h0 = h0;
    return s;
}

FieldSchedule FieldSchedule::rotating_sweep(double h, double h0, double t0, double tf) {
    if (!(tf > t0)) throw ConfigError("rotating sweep requires tf > t0");
    FieldSchedule s;
    s.kind = ScheduleKind::RotatingSweep;
    s.h = h;
    s.h0 = h0;
    s.t0 = t0;
    s.tf = tf;
    return s;
}

Vec3 field_at(const FieldSchedule& schedule, double t) {
    if (schedule.kind == ScheduleKind::Static) return {schedule.delta, 0.0, schedule.h0};
    const double slack = 1e-9 * std::max(1.0, std::abs(schedule.tf - schedule.t0));
    if (t < schedule.t0 - slack || t > schedule.tf + slack)
        throw std::domain_error("time " + std::to_string(t) + " outside sweep window [" +
                                std::to_string(schedule.t0) + ", " + std::to_string(schedule.tf) +
                                "]");
    const double theta =
        std::numbers::pi * (t - schedule.t0) / (schedule.tf - schedule.t0);
    return {schedule.h * std::sin(theta), 0.0, schedule.h0 + schedule.h * std::cos(theta)};
}

std::size_t CsrMatrix::max_row_nonzeros() const {
    std::size_t best = 0;
    for (std::size_t r = 0; r + 1 < row_ptr.size(); ++r)
        best = std::max(best, static_cast<std::size_t>(row_ptr[r + 1] - row_ptr[r]));
    return best;
}

void CsrMatrix::accumulate(std::span<const Complex> x, std::span<Complex> y, double scale) const {
    const std::size_t n = rows();
    for (std::size_t r = 0; r < n; ++r) {
        Complex acc{0.0, 0.0};
        for (std::int64_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) acc += val[p] * x[col[p]];
        y[r] += scale * acc;
    }
}

SparseHamiltonian SparseHamiltonian::build(std::shared_ptr<const BasisTable> table,
                                           const BathModes& modes, CouplingAxis axis,
                                           std::size_t max_nonzeros) {
    if (!table) throw std::invalid_argument("null basis table");
    if (modes.count() != table->modes())
        throw ConfigError("bath has " + std::to_string(modes.count()) + " modes but basis has " +
                          std::to_string(table->modes()));

    SparseHamiltonian h;
    h.table_ = std::move(table);
    h.axis_ = axis;

    const BasisTable& basis = *h.table_;
    const std::size_t bath_dim = basis.bath_dimension();
    const int m = basis.modes();

    h.bath_diag_.resize(static_cast<Eigen::Index>(bath_dim));
    for (std::size_t b = 0; b < bath_dim; ++b) {
        auto occ = basis.occupations(b);
        double e = 0.0;
        for (int k = 0; k < m; ++k) e += modes.omegas[k] * occ[k];
        h.bath_diag_[static_cast<Eigen::Index>(b)] = e;
    }

    // X = sum_k g_k (b†_k + b_k), with matrix elements leaving the excitation
    // budget projected out. Rows are built in index order so the CSR is
    // deterministic; columns within a row follow mode order (raise then lower).
    CsrMatrix& x = h.displacement_;
    x.row_ptr.reserve(bath_dim + 1);
    x.row_ptr.push_back(0);
    for (std::size_t b = 0; b < bath_dim; ++b) {
        for (int k = 0; k < m; ++k) {
            if (modes.couplings[k] == 0.0) continue;
            // <b| X |b'> with b' one quantum below/above b in mode k:
            if (auto low = basis.lowered(b, k)) {  // reaches b from raising b'
                x.col.push_back(static_cast<std::int32_t>(low->bath_index));
                x.val.push_back(modes.couplings[k] * low->amplitude);
            }
            if (auto high = basis.raised(b, k)) {
                x.col.push_back(static_cast<std::int32_t>(high->bath_index));
                x.val.push_back(modes.couplings[k] * high->amplitude);
            }
        }
        x.row_ptr.push_back(static_cast<std::int64_t>(x.col.size()));
        if (x.col.size() > max_nonzeros)
            throw CapacityError("interaction operator exceeds the nonzero ceiling of " +
                                std::to_string(max_nonzeros));
    }
    return h;
}

void SparseHamiltonian::check_dimension(const StateVector& psi) const {
    if (static_cast<std::size_t>(psi.size()) != dimension())
        throw std::invalid_argument("state vector has dimension " + std::to_string(psi.size()) +
                                    ", Hamiltonian expects " + std::to_string(dimension()));
}

void SparseHamiltonian::accumulate_bath(const StateVector& psi, StateVector& out) const {
    const std::size_t bd = table_->bath_dimension();
    for (std::size_t b = 0; b < bd; ++b) {
        const double e = bath_diag_[static_cast<Eigen::Index>(b)];
        out[static_cast<Eigen::Index>(b)] += e * psi[static_cast<Eigen::Index>(b)];
        out[static_cast<Eigen::Index>(b + bd)] += e * psi[static_cast<Eigen::Index>(b + bd)];
    }
}

void SparseHamiltonian::accumulate_interaction(const StateVector& psi, StateVector& out) const {
    const std::size_t bd = table_->bath_dimension();
    std::span<const Complex> up{psi.data(), bd};
    std::span<const Complex> down{psi.data() + bd, bd};
    std::span<Complex> out_up{out.data(), bd};
    std::span<Complex> out_down{out.data() + bd, bd};
    if (axis_ == CouplingAxis::Z) {
        // 1/2 sigma_z ⊗ X: +X/2 on the spin-up block, -X/2 on the spin-down block
        displacement_.accumulate(up, out_up, +0.5);
        displacement_.accumulate(down, out_down, -0.5);
    } else {
        // 1/2 sigma_x ⊗ X: swaps the spin blocks
        displacement_.accumulate(down, out_up, +0.5);
        displacement_.accumulate(up, out_down, +0.5);
    }
}

void SparseHamiltonian::accumulate_qubit(const Vec3& field, const StateVector& psi,
                                         StateVector& out) const {
    // -1/2 h·sigma acting on the spin blocks:
    //   out_up   += -1/2 ( hz psi_up   + (hx - i hy) psi_down )
    //   out_down += -1/2 ( (hx + i hy) psi_up - hz psi_down )
    const std::size_t bd = table_->bath_dimension();
    const Complex upper = -0.5 * Complex(field[0], -field[1]);
    const Complex lower = -0.5 * Complex(field[0], +field[1]);
    const double diag = -0.5 * field[2];
    for (std::size_t b = 0; b < bd; ++b) {
        const Complex pu = psi[static_cast<Eigen::Index>(b)];
        const Complex pd = psi[static_cast<Eigen::Index>(b + bd)];
        out[static_cast<Eigen::Index>(b)] += diag * pu + upper * pd;
        out[static_cast<Eigen::Index>(b + bd)] += lower * pu - diag * pd;
    }
}

void SparseHamiltonian::apply_pauli(int axis012, const StateVector& psi, StateVector& out) const {
    check_dimension(psi);
    out.resize(psi.size());
    const std::size_t bd = table_->bath_dimension();
    for (std::size_t b = 0; b < bd; ++b) {
        const Complex pu = psi[static_cast<Eigen::Index>(b)];
        const Complex pd = psi[static_cast<Eigen::Index>(b + bd)];
        Complex nu, nd;
        switch (axis012) {
            case 0: nu = pd, nd = pu; break;                                  // sigma_x
            case 1: nu = Complex(0, -1) * pd, nd = Complex(0, 1) * pu; break; // sigma_y
            case 2: nu = pu, nd = -pd; break;                                 // sigma_z
            default: throw std::invalid_argument("pauli axis must be 0, 1 or 2");
        }
        out[static_cast<Eigen::Index>(b)] = nu;
        out[static_cast<Eigen::Index>(b + bd)] = nd;
    }
}

void SparseHamiltonian::apply(const FieldSchedule& schedule, double t, const StateVector& psi,
                              StateVector& out) const {
    check_dimension(psi);
    out.setZero(psi.size());
    accumulate_bath(psi, out);
    accumulate_interaction(psi, out);
    accumulate_qubit(field_at(schedule, t), psi, out);
}

StateVector SparseHamiltonian::apply(const FieldSchedule& schedule, double t,
                                     const StateVector& psi) const {
    StateVector out;
    apply(schedule, t, psi, out);
    return out;
}

double SparseHamiltonian::expect_bath(const StateVector& psi) const {
    check_dimension(psi);
    StateVector tmp = StateVector::Zero(psi.size());
    accumulate_bath(psi, tmp);
    return psi.dot(tmp).real();
}

double SparseHamiltonian::expect_interaction(const StateVector& psi) const {
    check_dimension(psi);
    StateVector tmp = StateVector::Zero(psi.size());
    accumulate_interaction(psi, tmp);
    return psi.dot(tmp).real();
}

double SparseHamiltonian::expect_qubit(const Vec3& field, const StateVector& psi) const {
    check_dimension(psi);
    StateVector tmp = StateVector::Zero(psi.size());
    accumulate_qubit(field, psi, tmp);
    return psi.dot(tmp).real();
}

double SparseHamiltonian::expect_total(const FieldSchedule& schedule, double t,
                                       const StateVector& psi) const {
    return psi.dot(apply(schedule, t, psi)).real();
}

}  // namespace silsbm
