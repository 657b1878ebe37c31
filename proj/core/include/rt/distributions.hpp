#pragma once

#include <cstdint>
#include <vector>

namespace rt {

/// Noise law of the null observations. Either a fully known CDF or a
/// parametric family whose parameter is estimated during selection.
struct NullModel {
    enum class Kind {
        StandardGaussian,
        Gaussian,          // zero-mean, known sigma
        Exponential,       // known rate, support [0, inf)
        GaussianUnknownVariance,
    };

    Kind kind = Kind::StandardGaussian;
    double param = 1.0;  // sigma for Gaussian, rate for Exponential

    static NullModel standard_gaussian() { return {Kind::StandardGaussian, 1.0}; }
    static NullModel gaussian(double sigma);
    static NullModel exponential(double rate);
    static NullModel gaussian_unknown_variance() {
        return {Kind::GaussianUnknownVariance, 0.0};
    }

    bool known() const { return kind != Kind::GaussianUnknownVariance; }

    /// Resolve the parametric family at a concrete parameter value
    /// (variance for GaussianUnknownVariance).
    NullModel resolved(double theta) const;
};

/// Law of the non-null observations in the simulation generators.
struct SignalLaw {
    enum class Kind { Constant, Gaussian, Gamma, TwoComponentGaussian };

    Kind kind = Kind::Constant;
    double a = 0.0;  // value | mu | shape | mu1
    double b = 0.0;  // -     | sigma | scale | sigma1
    double c = 0.0;  // mu2
    double d = 0.0;  // sigma2
    double weight2 = 0.0;  // weight of component 2, in (0,1)

    static SignalLaw constant(double value);
    static SignalLaw gaussian(double mu, double sigma);
    static SignalLaw gamma(double shape, double scale);
    static SignalLaw two_gaussian(double mu1, double sigma1, double mu2,
                                  double sigma2, double weight2);
};

/// F_|eps|(y) for a fully known null model; F(y) - F(-y) for symmetric laws,
/// F(y) directly for the exponential.
double folded_cdf(const NullModel& model, double y);

/// log(1 - F_|eps|(y)), computed from the upper-tail log-survival so the
/// exponential transform stays finite and ordered far into the tail.
double log_folded_survival(const NullModel& model, double y);

/// Regularized lower incomplete gamma P(alpha, x / beta); CDF of
/// Gamma(shape alpha, scale beta).
double gamma_cdf(double alpha, double beta, double x);

std::vector<double> sample(const NullModel& model, std::size_t count,
                           std::uint64_t seed);
std::vector<double> sample(const SignalLaw& law, std::size_t count,
                           std::uint64_t seed);

class Rng;
double sample_one(const NullModel& model, Rng& rng);
double sample_one(const SignalLaw& law, Rng& rng);

}  // namespace rt
