#include "silsbm/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "silsbm/errors.hpp"

namespace silsbm {

void SILParams::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0, got " + std::to_string(dt));
    if (krylov_dim < 2 || krylov_dim > 64)
        throw ConfigError("krylov_dim must be in [2, 64], got " + std::to_string(krylov_dim));
    if (!(breakdown_tol > 0.0)) throw ConfigError("breakdown_tol must be > 0");
}

namespace {

// Lanczos recursion into caller-owned buffers; returns the subspace size m.
// ws.vectors[0..m) hold the orthonormal basis, ws.alpha/ws.beta the projected
// tridiagonal.
int lanczos(const StateVector& psi, double norm0, double t, const HamiltonianAction& h,
            const SILParams& params, KrylovWorkspace& ws, bool& breakdown, double& residual) {
    const int n = params.krylov_dim;
    if (static_cast<int>(ws.vectors.size()) < n) ws.vectors.resize(n);
    ws.alpha.clear();
    ws.beta.clear();
    breakdown = false;
    residual = 0.0;

    ws.vectors[0] = psi / norm0;
    for (int j = 0; j < n; ++j) {
        h(t, ws.vectors[j], ws.w);
        if (j > 0) ws.w -= ws.beta[j - 1] * ws.vectors[j - 1];
        const double a = ws.vectors[j].dot(ws.w).real();
        ws.alpha.push_back(a);
        ws.w -= a * ws.vectors[j];
        if (params.reorthogonalize) {
            for (int i = 0; i <= j; ++i) ws.w -= ws.vectors[i].dot(ws.w) * ws.vectors[i];
        }
        const double b = ws.w.norm();
        if (!std::isfinite(b)) throw NumericalError("non-finite amplitude in Lanczos recursion");
        residual = b;
        if (j + 1 == n) break;
        if (b < params.breakdown_tol) {  // happy breakdown: subspace closed, result exact
            breakdown = true;
            break;
        }
        ws.beta.push_back(b);
        ws.vectors[j + 1] = ws.w / b;
    }
    return static_cast<int>(ws.alpha.size());
}

}  // namespace

KrylovDecomposition build_krylov(const StateVector& psi, double t, const HamiltonianAction& h,
                                 const SILParams& params) {
    const double norm0 = psi.norm();
    if (!(norm0 > 0.0) || !std::isfinite(norm0))
        throw NumericalError("Krylov seed vector has non-finite or zero norm");
    KrylovWorkspace ws;
    KrylovDecomposition k;
    const int m = lanczos(psi, norm0, t, h, params, ws, k.breakdown, k.residual);
    k.vectors.assign(ws.vectors.begin(), ws.vectors.begin() + m);
    k.alpha = ws.alpha;
    k.beta = ws.beta;
    return k;
}

StepInfo krylov_step(StateVector& psi, double t, double dt, const SILParams& params,
                     const HamiltonianAction& h, KrylovWorkspace& ws) {
    const double norm_in = psi.norm();
    if (!(norm_in > 0.0) || !std::isfinite(norm_in))
        throw NumericalError("Krylov seed vector has non-finite or zero norm");
    if (dt == 0.0) return StepInfo{1, false, 0.0};

    bool breakdown = false;
    double residual = 0.0;
    const int m = lanczos(psi, norm_in, t + 0.5 * dt, h, params, ws, breakdown, residual);

    // Exponentiate the projected tridiagonal via its eigendecomposition.
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) tri(i, i) = ws.alpha[i];
    for (int i = 0; i + 1 < m; ++i) tri(i, i + 1) = tri(i + 1, i) = ws.beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigendecomposition of the projected Hamiltonian failed");

    // coeffs = Q exp(-i lambda dt) Q^T e_1
    Eigen::VectorXcd phases(m);
    for (int i = 0; i < m; ++i) {
        const double ang = -es.eigenvalues()[i] * dt;
        phases[i] = Complex(std::cos(ang), std::sin(ang)) * es.eigenvectors()(0, i);
    }
    const Eigen::VectorXcd coeffs = es.eigenvectors() * phases;

    psi = (norm_in * coeffs[0]) * ws.vectors[0];
    for (int i = 1; i < m; ++i) psi += (norm_in * coeffs[i]) * ws.vectors[i];

    const double norm_out = psi.norm();
    if (!std::isfinite(norm_out)) throw NumericalError("non-finite amplitude after Krylov step");
    return StepInfo{m, breakdown, std::abs(norm_out - norm_in)};
}

StepInfo krylov_step(StateVector& psi, double t, double dt, const SILParams& params,
                     const HamiltonianAction& h) {
    KrylovWorkspace ws;
    return krylov_step(psi, t, dt, params, h, ws);
}

PropagationReport propagate(StateVector& psi, double t0, double t_end, const SILParams& params,
                            const HamiltonianAction& h, std::span<const double> sample_times,
                            const SampleHook& hook) {
    params.validate();
    if (!(t_end >= t0)) throw ConfigError("propagation requires t_end >= t0");

    PropagationReport report;
    KrylovWorkspace workspace;
    const double time_eps = 1e-12 * std::max(1.0, std::abs(t_end - t0));

    auto handle_norm = [&](double t) {
        const double drift = std::abs(psi.norm() - 1.0);
        report.max_norm_drift = std::max(report.max_norm_drift, drift);
        if (drift > kNormAbortThreshold)
            throw NumericalError("norm drift " + std::to_string(drift) + " at t=" +
                                 std::to_string(t) + " exceeds abort threshold");
        if (drift > kRenormThreshold) {
            psi /= psi.norm();
            ++report.renormalizations;
        }
    };

    // Advance across [t, target] in equal substeps no longer than params.dt,
    // landing on `target` exactly.
    double t = t0;
    auto advance_to = [&](double target) {
        if (target <= t + time_eps) return;
        const double span = target - t;
        const auto n = std::max<std::size_t>(
            static_cast<std::size_t>(std::ceil(span / params.dt - 1e-9)), 1);
        const double dt = span / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            krylov_step(psi, t, dt, params, h, workspace);
            t += dt;
            ++report.steps;
            handle_norm(t);
        }
        t = target;  // remove accumulated rounding
    };

    double previous = t0 - 1.0;
    for (double target : sample_times) {
        if (target < t0 - time_eps || target > t_end + time_eps)
            throw ConfigError("sample time " + std::to_string(target) +
                              " outside the propagation window");
        if (target < previous) throw ConfigError("sample times must be sorted ascending");
        previous = target;
        advance_to(target);
        if (hook) hook(target, psi);
    }
    advance_to(t_end);
    return report;
}

}  // namespace silsbm
