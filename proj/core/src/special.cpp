#include "rt/special.hpp"

#include <cmath>
#include <stdexcept>

namespace rt {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;

// Asymptotic expansion of log erfc(x) for large x:
//   erfc(x) ~ exp(-x^2) / (x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k
double log_erfc_asymptotic(double x) {
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return -x * x - std::log(x * kSqrtPi) + std::log(sum);
}

// Series for P(a, x), valid for x < a + 1.
double lower_gamma_series(double a, double x, double log_pref) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(log_pref);
}

// Lentz continued fraction for Q(a, x) / (x^a e^{-x} / Gamma(a)).
double upper_gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double log_erfc(double x) {
    if (x < 0.0) throw std::domain_error("log_erfc: negative argument");
    if (x < 20.0) return std::log(std::erfc(x));
    return log_erfc_asymptotic(x);
}

double reg_lower_gamma(double a, double x) {
    if (a <= 0.0) throw std::domain_error("reg_lower_gamma: a must be positive");
    if (x < 0.0) throw std::domain_error("reg_lower_gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    const double log_pref = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) return lower_gamma_series(a, x, log_pref);
    return 1.0 - upper_gamma_cf(a, x) * std::exp(log_pref);
}

double normal_pdf(double x, double mean, double sigma) {
    return std::exp(log_normal_pdf(x, mean, sigma));
}

double log_normal_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return -0.5 * z * z - std::log(sigma) - 0.91893853320467274178032973640562;
}

}  // namespace rt
