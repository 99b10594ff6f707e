// fitting.hpp — damped-cosine least squares for extracting the oscillation
// frequency, decay rate and quality factor Q = omega/gamma from magnetization
// traces. Model: y(t) = a exp(-gamma t) cos(omega t + phi) + c.

#pragma once

#include <span>

namespace silsbm {

struct DampedFit {
    double omega = 0.0;
    double gamma = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    double offset = 0.0;
    double residual_rms = 0.0;
    bool converged = false;
    bool degenerate = false;  // constant input, no oscillation to fit
    int iterations = 0;
};

struct TimeWindow {
    double begin;
    double end;
};

// Least-squares fit over samples with t in [window.begin, window.end].
// Initial guesses come from zero-crossing spacing (omega) and the slope of the
// log envelope (gamma); refinement is Levenberg-style damped least squares
// with an iteration cap of 500 and step tolerance 1e-12. Deterministic.
// Requires at least 20 samples in the window.
DampedFit fit_damped_cosine(std::span<const double> t, std::span<const double> y,
                            TimeWindow window);

// Q = omega/gamma; +infinity when gamma < 1e-12. Throws std::invalid_argument
// on a non-converged fit.
double quality_of(const DampedFit& fit);

}  // namespace silsbm
