// hamiltonian.hpp — sparse assembly and matrix-free application of
// H(t) = -1/2 h(t)·sigma + sum_k w_k b†_k b_k + 1/2 (sigma·n) sum_k g_k (b†_k + b_k)
//
// The time-independent pieces are stored once: the bath energy as a diagonal
// over bath configurations and the displacement operator X = sum_k g_k(b†_k+b_k)
// as a CSR matrix on the bath sector. The qubit term is applied matrix-free
// from the field schedule, so nothing is reassembled between steps.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "silsbm/bath.hpp"
#include "silsbm/fock_basis.hpp"

namespace silsbm {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Vec3 = std::array<double, 3>;

inline constexpr std::size_t kDefaultMaxNonzeros = 400'000'000;

enum class CouplingAxis { X, Z };
enum class ScheduleKind { Static, RotatingSweep };

// External field h(t) entering H_S(t) = -1/2 h(t)·sigma.
//   Static:        h = (delta, 0, h0), valid for all t.
//   RotatingSweep: h = (h sin th, 0, h0 + h cos th), th(t) = pi (t-t0)/(tf-t0),
//                  valid for t in [t0, tf].
struct FieldSchedule {
    ScheduleKind kind = ScheduleKind::Static;
    double delta = 0.0;  // static tunnelling along x
    double h0 = 0.0;     // static bias along z
    double h = 0.0;      // drive amplitude (sweep only)
    double t0 = 0.0;
    double tf = 0.0;  // sweep end time (sweep only)

    static FieldSchedule static_field(double delta, double h0);
    static FieldSchedule rotating_sweep(double h, double h0, double t0, double tf);
};

Vec3 field_at(const FieldSchedule& schedule, double t);

// Real sparse matrix in CSR form; rows fully stored (the operators we build
// are symmetric, but apply never relies on that).
struct CsrMatrix {
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> col;
    std::vector<double> val;

    std::size_t rows() const { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
    std::size_t nonzeros() const { return val.size(); }
    std::size_t max_row_nonzeros() const;

    // y += scale * A * x
    void accumulate(std::span<const Complex> x, std::span<Complex> y, double scale) const;
};

class SparseHamiltonian {
public:
    SparseHamiltonian() = default;

    // axis selects n̂ ∈ {x̂, ẑ}; throws CapacityError past max_nonzeros.
    static SparseHamiltonian build(std::shared_ptr<const BasisTable> table, const BathModes& modes,
                                   CouplingAxis axis,
                                   std::size_t max_nonzeros = kDefaultMaxNonzeros);

    const BasisTable& basis() const { return *table_; }
    std::shared_ptr<const BasisTable> basis_ptr() const { return table_; }
    CouplingAxis coupling_axis() const { return axis_; }
    const CsrMatrix& displacement() const { return displacement_; }
    const Eigen::VectorXd& bath_diagonal() const { return bath_diag_; }

    std::size_t dimension() const { return table_ ? table_->dimension() : 0; }

    // out = H(t) psi. Throws std::invalid_argument on dimension mismatch.
    void apply(const FieldSchedule& schedule, double t, const StateVector& psi,
               StateVector& out) const;
    StateVector apply(const FieldSchedule& schedule, double t, const StateVector& psi) const;

    // Individual pieces, all accumulating into out (out += term * psi):
    void accumulate_bath(const StateVector& psi, StateVector& out) const;
    void accumulate_interaction(const StateVector& psi, StateVector& out) const;
    void accumulate_qubit(const Vec3& field, const StateVector& psi, StateVector& out) const;

    // Lifted Pauli operators; axis012 = 0,1,2 for sigma_x, sigma_y, sigma_z.
    void apply_pauli(int axis012, const StateVector& psi, StateVector& out) const;

    // Expectation values of the pieces (real parts of Hermitian forms).
    double expect_bath(const StateVector& psi) const;
    double expect_interaction(const StateVector& psi) const;
    double expect_qubit(const Vec3& field, const StateVector& psi) const;
    double expect_total(const FieldSchedule& schedule, double t, const StateVector& psi) const;

private:
    void check_dimension(const StateVector& psi) const;

    std::shared_ptr<const BasisTable> table_;
    CouplingAxis axis_ = CouplingAxis::Z;
    Eigen::VectorXd bath_diag_;  // sum_k w_k n_k per bath config
    CsrMatrix displacement_;     // X = sum_k g_k (b†_k + b_k), bath sector
};

}  // namespace silsbm
