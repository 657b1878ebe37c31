#include "rt/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "rt/rng.hpp"
#include "rt/special.hpp"

namespace rt {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
}

NullModel NullModel::gaussian(double sigma) {
    if (sigma <= 0.0) throw std::domain_error("NullModel: sigma must be positive");
    return {Kind::Gaussian, sigma};
}

NullModel NullModel::exponential(double rate) {
    if (rate <= 0.0) throw std::domain_error("NullModel: rate must be positive");
    return {Kind::Exponential, rate};
}

NullModel NullModel::resolved(double theta) const {
    if (kind != Kind::GaussianUnknownVariance)
        throw std::logic_error("NullModel::resolved: model already known");
    if (theta <= 0.0) throw std::domain_error("NullModel: variance must be positive");
    return gaussian(std::sqrt(theta));
}

SignalLaw SignalLaw::constant(double value) { return {Kind::Constant, value}; }

SignalLaw SignalLaw::gaussian(double mu, double sigma) {
    if (sigma <= 0.0) throw std::domain_error("SignalLaw: sigma must be positive");
    return {Kind::Gaussian, mu, sigma};
}

SignalLaw SignalLaw::gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0)
        throw std::domain_error("SignalLaw: shape and scale must be positive");
    return {Kind::Gamma, shape, scale};
}

SignalLaw SignalLaw::two_gaussian(double mu1, double sigma1, double mu2,
                                  double sigma2, double weight2) {
    if (sigma1 <= 0.0 || sigma2 <= 0.0)
        throw std::domain_error("SignalLaw: sigmas must be positive");
    if (weight2 <= 0.0 || weight2 >= 1.0)
        throw std::domain_error("SignalLaw: weight2 must be in (0,1)");
    return {Kind::TwoComponentGaussian, mu1, sigma1, mu2, sigma2, weight2};
}

double folded_cdf(const NullModel& model, double y) {
    if (y < 0.0) throw std::domain_error("folded_cdf: y must be nonnegative");
    switch (model.kind) {
        case NullModel::Kind::StandardGaussian:
            return std::erf(y * kInvSqrt2);
        case NullModel::Kind::Gaussian:
            return std::erf(y * kInvSqrt2 / model.param);
        case NullModel::Kind::Exponential:
            return -std::expm1(-model.param * y);
        case NullModel::Kind::GaussianUnknownVariance:
            throw std::logic_error("folded_cdf: unresolved parameter");
    }
    throw std::logic_error("folded_cdf: bad model kind");
}

double log_folded_survival(const NullModel& model, double y) {
    if (y < 0.0) throw std::domain_error("log_folded_survival: y must be nonnegative");
    switch (model.kind) {
        case NullModel::Kind::StandardGaussian:
            return log_erfc(y * kInvSqrt2);
        case NullModel::Kind::Gaussian:
            return log_erfc(y * kInvSqrt2 / model.param);
        case NullModel::Kind::Exponential:
            return -model.param * y;
        case NullModel::Kind::GaussianUnknownVariance:
            throw std::logic_error("log_folded_survival: unresolved parameter");
    }
    throw std::logic_error("log_folded_survival: bad model kind");
}

double gamma_cdf(double alpha, double beta, double x) {
    if (alpha <= 0.0 || beta <= 0.0)
        throw std::domain_error("gamma_cdf: alpha and beta must be positive");
    if (x < 0.0) throw std::domain_error("gamma_cdf: x must be nonnegative");
    return reg_lower_gamma(alpha, x / beta);
}

double sample_one(const NullModel& model, Rng& rng) {
    switch (model.kind) {
        case NullModel::Kind::StandardGaussian:
            return rng.gaussian();
        case NullModel::Kind::Gaussian:
            return rng.gaussian(0.0, model.param);
        case NullModel::Kind::Exponential:
            return rng.exponential(model.param);
        case NullModel::Kind::GaussianUnknownVariance:
            throw std::logic_error("sample: unresolved parameter");
    }
    throw std::logic_error("sample: bad model kind");
}

double sample_one(const SignalLaw& law, Rng& rng) {
    switch (law.kind) {
        case SignalLaw::Kind::Constant:
            return law.a;
        case SignalLaw::Kind::Gaussian:
            return rng.gaussian(law.a, law.b);
        case SignalLaw::Kind::Gamma:
            return rng.gamma(law.a, law.b);
        case SignalLaw::Kind::TwoComponentGaussian:
            return rng.uniform() < law.weight2 ? rng.gaussian(law.c, law.d)
                                               : rng.gaussian(law.a, law.b);
    }
    throw std::logic_error("sample: bad signal law kind");
}

std::vector<double> sample(const NullModel& model, std::size_t count,
                           std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = sample_one(model, rng);
    return out;
}

std::vector<double> sample(const SignalLaw& law, std::size_t count,
                           std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = sample_one(law, rng);
    return out;
}

}  // namespace rt
