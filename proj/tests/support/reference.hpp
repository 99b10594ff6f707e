// reference.hpp — independent test-side oracles. Everything here is written
// from first principles (brute-force enumeration, dense matrices, elementary
// quadrature) and must stay independent of the library implementation paths
// it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace testref {

using Complex = std::complex<double>;

struct RefConfig {
    int spin;                     // +1 or -1
    std::vector<int> occupations;
};

// Brute force: every occupation vector with entries in [0, nmax] whose sum is
// <= nmax, paired with both spins. Spin +1 block first, occupation vectors in
// ascending lexicographic order (mode 0 most significant).
inline std::vector<RefConfig> enumerate_all(int modes, int nmax) {
    std::vector<std::vector<int>> baths;
    std::vector<int> current(modes, 0);
    const auto total = [&]() {
        int sum = 0;
        for (int n : current) sum += n;
        return sum;
    };
    // odometer over the full box [0, nmax]^modes, filtered by the budget
    for (;;) {
        if (total() <= nmax) baths.push_back(current);
        int k = modes - 1;
        while (k >= 0 && current[k] == nmax) current[k--] = 0;
        if (k < 0) break;
        ++current[k];
    }
    std::sort(baths.begin(), baths.end());
    std::vector<RefConfig> out;
    for (int spin : {+1, -1})
        for (const auto& b : baths) out.push_back({spin, b});
    return out;
}

// Dense H from first principles over the reference enumeration:
//   H = -1/2 field·sigma + sum_k w_k n_k + 1/2 (sigma·axis) sum_k g_k (b†_k + b_k)
// axis012: 0 couples along x, 2 along z.
inline Eigen::MatrixXcd dense_hamiltonian(const std::vector<RefConfig>& basis,
                                          const std::vector<double>& omegas,
                                          const std::vector<double>& couplings, int axis012,
                                          const std::array<double, 3>& field) {
    const int dim = static_cast<int>(basis.size());
    const int modes = static_cast<int>(omegas.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    auto spin_matrix_element = [](int axis, int spin_row, int spin_col) -> Complex {
        // <s_row| sigma_axis |s_col> with s = +-1 in the sigma_z basis
        switch (axis) {
            case 0: return spin_row == -spin_col ? Complex(1, 0) : Complex(0, 0);
            case 1:
                if (spin_row == -spin_col) return Complex(0, spin_row > 0 ? -1.0 : 1.0);
                return {0, 0};
            default: return spin_row == spin_col ? Complex(spin_row, 0) : Complex(0, 0);
        }
    };

    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            Complex element{0, 0};
            const bool same_bath = basis[i].occupations == basis[j].occupations;
            // qubit term
            if (same_bath) {
                for (int axis = 0; axis < 3; ++axis)
                    element += -0.5 * field[axis] *
                               spin_matrix_element(axis, basis[i].spin, basis[j].spin);
            }
            // bath term
            if (same_bath && basis[i].spin == basis[j].spin) {
                double e = 0.0;
                for (int k = 0; k < modes; ++k) e += omegas[k] * basis[j].occupations[k];
                element += e;
            }
            // interaction: bath configs differing by one quantum in one mode
            int hop_mode = -1, diff_count = 0;
            for (int k = 0; k < modes; ++k) {
                if (basis[i].occupations[k] != basis[j].occupations[k]) {
                    ++diff_count;
                    hop_mode = k;
                }
            }
            if (diff_count == 1 &&
                std::abs(basis[i].occupations[hop_mode] - basis[j].occupations[hop_mode]) == 1) {
                const int n_larger =
                    std::max(basis[i].occupations[hop_mode], basis[j].occupations[hop_mode]);
                element += 0.5 * spin_matrix_element(axis012, basis[i].spin, basis[j].spin) *
                           couplings[hop_mode] * std::sqrt(static_cast<double>(n_larger));
            }
            h(i, j) = element;
        }
    }
    return h;
}

// exp(-i H t) psi via dense eigendecomposition.
inline Eigen::VectorXcd expm_apply(const Eigen::MatrixXcd& h, double t,
                                   const Eigen::VectorXcd& psi) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const double ang = -es.eigenvalues()[i] * t;
        phases[i] = Complex(std::cos(ang), std::sin(ang));
    }
    return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
}

// Composite Simpson quadrature on a fine uniform grid (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline Eigen::VectorXcd random_state(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

}  // namespace testref
