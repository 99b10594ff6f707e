// bath.hpp — Ohmic-family spectral density and its discretization into modes
//
// J(omega) = 2 alpha omega^s / omega_c^{s-1} * exp(-omega/omega_c).
// Discretization places M modes in [0, 2*omega_c] under the exponentially
// decreasing density of states rho(omega) ∝ exp(-omega/omega_c), normalized so
// the total measure over the range equals M. Each mode sits at the measure
// centroid of its equal-measure bin and carries g_k = sqrt(J(omega_k)/rho(omega_k)).

#pragma once

#include <vector>

namespace silsbm {

struct BathSpec {
    double alpha = 0.0;    // dimensionless coupling strength, >= 0
    double s = 1.0;        // spectral exponent, > 0 (1 = Ohmic)
    double omega_c = 1.0;  // cutoff frequency, > 0
    int modes = 1;         // number of discrete modes M

    void validate() const;
};

struct BathModes {
    std::vector<double> omegas;     // strictly increasing, in (0, 2*omega_c]
    std::vector<double> couplings;  // g_k >= 0

    int count() const { return static_cast<int>(omegas.size()); }
};

// J(omega); domain error for omega < 0.
double spectral_density(double omega, const BathSpec& spec);

// Equal-measure centroid discretization described above.
BathModes discretize(const BathSpec& spec);

}  // namespace silsbm
