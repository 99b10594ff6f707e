#include "silsbm/oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "silsbm/errors.hpp"

namespace silsbm::oracles {

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson refined by panel doubling until two consecutive halvings
// agree within the absolute tolerance. min_panels must be large enough to
// resolve the integrand's fastest oscillation; callers pass a frequency hint.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int min_panels) {
    if (b <= a) return 0.0;
    int n = 2;
    while (n < min_panels) n *= 2;

    auto simpson = [&](int panels) {
        const double h = (b - a) / panels;
        double acc = f(a) + f(b);
        for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };

    double coarse = simpson(n);
    int agreements = 0;
    for (int round = 0; round < 24; ++round) {
        n *= 2;
        const double fine = simpson(n);
        agreements = std::abs(fine - coarse) <= tol ? agreements + 1 : 0;
        coarse = fine;
        if (agreements >= 2) return fine;
    }
    throw NumericalError("quadrature failed to reach the requested tolerance");
}

}  // namespace

Gaps renormalized_gaps(double alpha, double delta, double omega_c) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::domain_error("renormalized gap requires 0 <= alpha < 1, got " +
                                std::to_string(alpha));
    const double delta_r = delta * std::pow(delta / omega_c, alpha / (1.0 - alpha));
    double prefactor;
    if (std::abs(alpha - 0.5) < 1e-12) {
        prefactor = kPi / 2.0;  // limit of Gamma(1-2a) cos(pi a) as a -> 1/2
    } else {
        prefactor = std::tgamma(1.0 - 2.0 * alpha) * std::cos(kPi * alpha);
    }
    const double delta_eff = std::pow(prefactor, 1.0 / (2.0 * (1.0 - alpha))) * delta_r;
    return {delta_r, delta_eff};
}

double toulouse_sigma_z(double t, double h0, double beta, double delta, double omega_c) {
    if (!(t >= 0.0)) throw std::domain_error("toulouse oracle requires t >= 0");
    if (!(beta > 0.0)) throw std::domain_error("toulouse oracle requires beta > 0");
    const double gamma = kPi * delta * delta / (2.0 * omega_c);
    const double decay = std::exp(-gamma * t);
    if (h0 == 0.0 || t == 0.0) return decay;

    // thermal kernel sin(h0 tau) / (beta sinh(pi tau / beta)), with its
    // tau -> 0 limit h0/pi; at T=0 the kernel reduces to sin(h0 tau)/(pi tau).
    const bool zero_t = std::isinf(beta);
    auto kernel = [&](double tau) {
        if (tau < 1e-14) return h0 / kPi;
        if (zero_t) return std::sin(h0 * tau) / (kPi * tau);
        const double arg = kPi * tau / beta;
        if (arg > 700.0) return 0.0;  // sinh underflow region
        return std::sin(h0 * tau) / (beta * std::sinh(arg));
    };
    auto integrand = [&](double tau) {
        return kernel(tau) *
               (std::exp(-0.5 * gamma * tau) - decay * std::exp(0.5 * gamma * tau));
    };
    // enough panels for the sin(h0 tau) oscillation and the decay scale
    const double cycles = std::abs(h0) * t / (2.0 * kPi) + gamma * t + 1.0;
    const int min_panels = static_cast<int>(std::min(1e6, 32.0 * cycles));
    return decay + 2.0 * integrate(integrand, 0.0, t, 1e-10, min_panels);
}

WeakCoupling weak_coupling_curves(double t, double alpha, double delta, double h0,
                                  double omega_c) {
    const double delta_r = renormalized_gaps(alpha, delta, omega_c).delta_r;
    const double omega = std::hypot(delta_r, h0);
    const double gamma_r = kPi * alpha * delta_r * delta_r / omega;
    const double slow = std::exp(-gamma_r * t);
    const double fast = std::cos(omega * t) * std::exp(-0.5 * gamma_r * t);
    WeakCoupling out;
    out.sigma_z = (h0 / omega) * (1.0 - slow) + (h0 * h0) / (omega * omega) * slow +
                  (delta_r * delta_r) / (omega * omega) * fast;
    out.sigma_x = (delta_r * delta_r) / (delta * omega) * (1.0 - slow) +
                  (h0 * delta_r * delta_r) / (delta * omega * omega) * (slow - fast);
    return out;
}

double quality_factor(double alpha) {
    // The cotangent is meaningful up to the coherent/incoherent crossover at
    // alpha = 1/2 (Q = 0 there); past it the argument wraps through pi and
    // the expression stops being a quality factor.
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw std::domain_error("quality factor requires 0 <= alpha <= 1/2");
    if (alpha == 0.0) return std::numeric_limits<double>::infinity();  // undamped limit
    return 1.0 / std::tan(kPi * alpha / (2.0 * (1.0 - alpha)));
}

double closed_excess_energy(double tf, double h) {
    if (!(tf > 0.0)) throw std::domain_error("closed excess energy requires tf > 0");
    const double thdot = kPi / tf;
    const double w2 = h * h + thdot * thdot;
    return 0.5 * h * thdot * thdot * (1.0 - std::cos(kPi * std::sqrt(w2) / thdot)) / w2;
}

Eigen::Vector2cd closed_sweep_spinor(double t, double tf, double h) {
    if (!(tf > 0.0)) throw std::domain_error("closed sweep requires tf > 0");
    const double thdot = kPi / tf;
    const double w = std::hypot(thdot, h);
    const double theta = kPi * t / tf;
    const double half = 0.5 * w * t;
    // Rotating frame (around y, counter to the drive): the frame Hamiltonian
    // is time-independent, H_r = -(h/2) sigma_z - (thdot/2) sigma_y, so
    // psi_r(t) = [cos(wt/2) I + i sin(wt/2) (thdot sigma_y + h sigma_z)/w] |+>.
    const Complex up{std::cos(half), (h / w) * std::sin(half)};
    const Complex down{-(thdot / w) * std::sin(half), 0.0};
    // Undo the frame rotation: psi = exp(-i sigma_y theta/2) psi_r.
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    Eigen::Vector2cd psi;
    psi(0) = c * up - s * down;
    psi(1) = s * up + c * down;
    return psi;
}

Vec3 closed_sweep_state(double t, double tf, double h) {
    const Eigen::Vector2cd psi = closed_sweep_spinor(t, tf, h);
    const Complex cross = std::conj(psi(0)) * psi(1);
    return {2.0 * cross.real(), 2.0 * cross.imag(),
            std::norm(psi(0)) - std::norm(psi(1))};
}

}  // namespace silsbm::oracles
