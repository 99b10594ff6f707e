#include "silsbm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace silsbm {

namespace {

struct Series {
    std::vector<double> t;
    std::vector<double> y;
};

Series clip(std::span<const double> t, std::span<const double> y, TimeWindow w) {
    if (t.size() != y.size()) throw std::invalid_argument("t and y must have equal length");
    Series s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= w.begin && t[i] <= w.end) {
            s.t.push_back(t[i]);
            s.y.push_back(y[i]);
        }
    }
    return s;
}

double model(double t, const Eigen::VectorXd& p) {
    // p = (a, gamma, omega, phi, c)
    return p[0] * std::exp(-p[1] * t) * std::cos(p[2] * t + p[3]) + p[4];
}

// Estimate omega from the mean spacing of sign changes of y - c; gamma from a
// log-linear fit through the local extrema of |y - c|.
void initial_guess(const Series& s, Eigen::VectorXd& p) {
    const std::size_t n = s.t.size();
    const double mean = std::accumulate(s.y.begin(), s.y.end(), 0.0) / static_cast<double>(n);

    std::vector<double> crossings;
    for (std::size_t i = 1; i < n; ++i) {
        const double a = s.y[i - 1] - mean;
        const double b = s.y[i] - mean;
        if ((a < 0.0) != (b < 0.0)) {
            // linear interpolation of the crossing time
            crossings.push_back(s.t[i - 1] + (s.t[i] - s.t[i - 1]) * a / (a - b));
        }
    }
    double omega = 0.0;
    if (crossings.size() >= 2) {
        const double spacing =
            (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
        if (spacing > 0.0) omega = std::numbers::pi / spacing;
    }

    // envelope points: local maxima of |y - mean|
    std::vector<double> et, ey;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = std::abs(s.y[i] - mean);
        if (v >= std::abs(s.y[i - 1] - mean) && v >= std::abs(s.y[i + 1] - mean) && v > 0.0) {
            et.push_back(s.t[i]);
            ey.push_back(std::log(v));
        }
    }
    double gamma = 0.0;
    double amp = std::abs(s.y.front() - mean);
    if (et.size() >= 2) {
        const double tm = std::accumulate(et.begin(), et.end(), 0.0) / et.size();
        const double ym = std::accumulate(ey.begin(), ey.end(), 0.0) / ey.size();
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < et.size(); ++i) {
            sxx += (et[i] - tm) * (et[i] - tm);
            sxy += (et[i] - tm) * (ey[i] - ym);
        }
        if (sxx > 0.0) {
            const double slope = sxy / sxx;
            gamma = std::max(0.0, -slope);
            amp = std::exp(ym - slope * tm);
        }
    } else if (std::abs(s.y.back() - mean) > 0.0 && amp > 0.0 && s.t.back() > s.t.front()) {
        gamma = std::log(amp / std::abs(s.y.back() - mean)) / (s.t.back() - s.t.front());
        gamma = std::max(0.0, gamma);
    }

    p.resize(5);
    p << amp, gamma, omega, 0.0, mean;
    // pick the phase minimizing the residual at the first sample
    const double denom = amp * std::exp(-gamma * s.t.front());
    if (denom > 0.0) {
        const double c0 = std::clamp((s.y.front() - mean) / denom, -1.0, 1.0);
        p[3] = std::acos(c0) - omega * s.t.front();
    }
}

}  // namespace

DampedFit fit_damped_cosine(std::span<const double> t, std::span<const double> y,
                            TimeWindow window) {
    Series s = clip(t, y, window);
    const std::size_t n = s.t.size();
    if (n < 20)
        throw std::invalid_argument("damped-cosine fit needs at least 20 samples in the window");

    DampedFit fit;
    const double ymin = *std::min_element(s.y.begin(), s.y.end());
    const double ymax = *std::max_element(s.y.begin(), s.y.end());
    if (!(std::isfinite(ymin) && std::isfinite(ymax))) return fit;  // converged = false
    if (ymax - ymin < 1e-14 * std::max(1.0, std::abs(ymax))) {
        fit.offset = 0.5 * (ymin + ymax);
        fit.converged = true;
        fit.degenerate = true;
        return fit;
    }

    Eigen::VectorXd p;
    initial_guess(s, p);

    constexpr int kMaxIterations = 500;
    constexpr double kStepTol = 1e-12;
    double lambda = 1e-3;

    auto residual_norm2 = [&](const Eigen::VectorXd& q) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = model(s.t[i], q) - s.y[i];
            acc += r * r;
        }
        return acc;
    };

    double chi2 = residual_norm2(p);
    Eigen::MatrixXd jac(n, 5);
    Eigen::VectorXd res(n);
    int it = 0;
    for (; it < kMaxIterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ti = s.t[i];
            const double e = std::exp(-p[1] * ti);
            const double cs = std::cos(p[2] * ti + p[3]);
            const double sn = std::sin(p[2] * ti + p[3]);
            res[i] = p[0] * e * cs + p[4] - s.y[i];
            jac(i, 0) = e * cs;
            jac(i, 1) = -ti * p[0] * e * cs;
            jac(i, 2) = -ti * p[0] * e * sn;
            jac(i, 3) = -p[0] * e * sn;
            jac(i, 4) = 1.0;
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * res;

        bool accepted = false;
        for (int tries = 0; tries < 32; ++tries) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
            const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
            const Eigen::VectorXd candidate = p + step;
            const double trial = residual_norm2(candidate);
            if (trial <= chi2) {
                const double rel = step.norm() / std::max(1.0, p.norm());
                p = candidate;
                chi2 = trial;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                if (rel < kStepTol) {
                    fit.converged = true;
                }
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
        if (!accepted || fit.converged) {
            fit.converged = fit.converged || !accepted;  // stalled = local optimum reached
            break;
        }
    }

    // canonical form: positive amplitude, omega >= 0, gamma clamped at zero
    if (p[0] < 0.0) {
        p[0] = -p[0];
        p[3] += std::numbers::pi;
    }
    if (p[2] < 0.0) {
        p[2] = -p[2];
        p[3] = -p[3];
    }
    p[3] = std::remainder(p[3], 2.0 * std::numbers::pi);
    fit.amplitude = p[0];
    fit.gamma = std::max(p[1], 0.0);
    fit.omega = p[2];
    fit.phase = p[3];
    fit.offset = p[4];
    fit.residual_rms = std::sqrt(chi2 / static_cast<double>(n));
    fit.iterations = it;
    return fit;
}

double quality_of(const DampedFit& fit) {
    if (!fit.converged) throw std::invalid_argument("quality factor of a non-converged fit");
    if (fit.gamma < 1e-12) return std::numeric_limits<double>::infinity();
    return fit.omega / fit.gamma;
}

}  // namespace silsbm
