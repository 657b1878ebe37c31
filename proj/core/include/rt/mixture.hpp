#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rt {

/// Two-class Gaussian mixture with the null component's mean structurally
/// fixed at zero.
struct MixtureFit {
    double p0 = 0.5;
    double p1 = 0.5;
    double mu1 = 0.0;   // mu0 is identically 0, never a field
    double sigma0 = 1.0;
    double sigma1 = 1.0;
    std::vector<std::array<double, 2>> responsibilities;
    std::vector<double> loglik_trace;
    bool converged = false;
    std::size_t iterations = 0;
};

struct DegenerateFitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pre-M-step initial guesses (the quantities the first M-step consumes).
struct EmInitDiagnostics {
    double sigma0_sq = 0.0;  // mean square of the negative data
    double p0 = 0.0;         // clipped kernel-density weight guess
};

/// Initial state from the negative data and a kernel density estimate at 0;
/// includes the first M-step.
MixtureFit em_init(const std::vector<double>& y,
                   EmInitDiagnostics* diagnostics = nullptr);

/// E-step responsibilities at fixed parameters.
std::vector<std::array<double, 2>> mixture_responsibilities(
    const std::vector<double>& y, const MixtureFit& fit);

/// EM iterations from em_init until the relative log-likelihood change drops
/// below tol. Throws DegenerateFitError when a weight or scale collapses.
MixtureFit em_fit(const std::vector<double>& y, std::size_t max_iters = 500,
                  double tol = 1e-8);

/// Gaussian-kernel density estimate with Silverman bandwidth.
double kde_gaussian(const std::vector<double>& y, double at);

/// Observed-data log-likelihood of a fit.
double mixture_loglik(const std::vector<double>& y, const MixtureFit& fit);

/// Smallest boundary of the upper decision region: posterior P(Z=1 | y)
/// reaches 1/2 and stays >= 1/2 above it.
double mixture_threshold(const MixtureFit& fit);

}  // namespace rt
