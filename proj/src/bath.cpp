#include "silsbm/bath.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "silsbm/errors.hpp"
#include "silsbm/fock_basis.hpp"

namespace silsbm {

void BathSpec::validate() const {
    if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0, got " + std::to_string(alpha));
    if (!(s > 0.0)) throw ConfigError("s must be > 0, got " + std::to_string(s));
    if (!(omega_c > 0.0))
        throw ConfigError("omega_c must be > 0, got " + std::to_string(omega_c));
    if (modes < 1 || modes > kMaxModes)
        throw ConfigError("modes must be in [1, " + std::to_string(kMaxModes) + "], got " +
                          std::to_string(modes));
}

double spectral_density(double omega, const BathSpec& spec) {
    if (omega < 0.0) throw std::domain_error("spectral density requires omega >= 0");
    if (omega == 0.0) return 0.0;
    return 2.0 * spec.alpha * std::pow(omega, spec.s) * std::pow(spec.omega_c, 1.0 - spec.s) *
           std::exp(-omega / spec.omega_c);
}

BathModes discretize(const BathSpec& spec) {
    spec.validate();
    const int m = spec.modes;
    const double wc = spec.omega_c;

    // rho(w) = c * exp(-w/wc) with integral over [0, 2wc] equal to m:
    // c * wc * (1 - e^{-2}) = m. Cumulative measure F(w) = c*wc*(1 - e^{-w/wc});
    // bin edges solve F = 0, 1, ..., m.
    const double span = 1.0 - std::exp(-2.0);
    const double c = m / (wc * span);

    BathModes out;
    out.omegas.reserve(m);
    out.couplings.reserve(m);

    double lo = 0.0;
    for (int k = 0; k < m; ++k) {
        const double hi = (k + 1 == m)
                              ? 2.0 * wc  // close the range exactly
                              : -wc * std::log(1.0 - (k + 1) * span / m);
        // Measure centroid of [lo, hi] under exp(-w/wc):
        //   <w> = [(lo+wc) e^{-lo/wc} - (hi+wc) e^{-hi/wc}] / [e^{-lo/wc} - e^{-hi/wc}]
        const double elo = std::exp(-lo / wc);
        const double ehi = std::exp(-hi / wc);
        const double omega = ((lo + wc) * elo - (hi + wc) * ehi) / (elo - ehi);
        out.omegas.push_back(omega);
        out.couplings.push_back(std::sqrt(spectral_density(omega, spec) / (c * std::exp(-omega / wc))));
        lo = hi;
    }
    return out;
}

}  // namespace silsbm
