#include "rt/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rt/kahan.hpp"
#include "rt/special.hpp"

namespace rt {

namespace {

constexpr double kWeightFloor = 1e-8;
constexpr double kSigmaFloor = 1e-8;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

void check_degenerate(const MixtureFit& fit) {
    if (fit.p0 < kWeightFloor || fit.p1 < kWeightFloor)
        throw DegenerateFitError("mixture weight collapsed");
    if (fit.sigma0 < kSigmaFloor || fit.sigma1 < kSigmaFloor)
        throw DegenerateFitError("mixture scale collapsed");
}

// M-step given responsibilities; mu0 stays 0.
void m_step(const std::vector<double>& y, MixtureFit& fit) {
    const std::size_t n = y.size();
    KahanSum w0, w1, w1y;
    for (std::size_t i = 0; i < n; ++i) {
        w0 += fit.responsibilities[i][0];
        w1 += fit.responsibilities[i][1];
        w1y += fit.responsibilities[i][1] * y[i];
    }
    fit.p0 = w0 / static_cast<double>(n);
    fit.p1 = w1 / static_cast<double>(n);
    if (w1 < kWeightFloor || w0 < kWeightFloor) {
        check_degenerate(fit);  // throws
    }
    fit.mu1 = w1y / static_cast<double>(w1);
    KahanSum s0, s1;
    for (std::size_t i = 0; i < n; ++i) {
        s0 += fit.responsibilities[i][0] * y[i] * y[i];
        const double r = y[i] - fit.mu1;
        s1 += fit.responsibilities[i][1] * r * r;
    }
    fit.sigma0 = std::sqrt(s0 / static_cast<double>(w0));
    fit.sigma1 = std::sqrt(s1 / static_cast<double>(w1));
    check_degenerate(fit);
}

// E-step; returns the observed-data log-likelihood at the current parameters.
double e_step(const std::vector<double>& y, MixtureFit& fit) {
    const double lp0 = std::log(fit.p0);
    const double lp1 = std::log(fit.p1);
    KahanSum ll;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double l0 = lp0 + log_normal_pdf(y[i], 0.0, fit.sigma0);
        const double l1 = lp1 + log_normal_pdf(y[i], fit.mu1, fit.sigma1);
        const double m = std::max(l0, l1);
        const double e0 = std::exp(l0 - m);
        const double e1 = std::exp(l1 - m);
        const double s = e0 + e1;
        fit.responsibilities[i][0] = e0 / s;
        fit.responsibilities[i][1] = e1 / s;
        ll += m + std::log(s);
    }
    return ll;
}

}  // namespace

double kde_gaussian(const std::vector<double>& y, double at) {
    const std::size_t n = y.size();
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    const double s = std::sqrt(var / (n > 1 ? n - 1 : 1));
    const double h = 1.06 * s * std::pow(static_cast<double>(n), -0.2);
    if (!(h > 0.0))
        throw std::invalid_argument("kde_gaussian: zero-spread sample");
    KahanSum sum;
    for (double v : y) {
        const double z = (at - v) / h;
        sum += std::exp(-0.5 * z * z);
    }
    return sum / (static_cast<double>(n) * h * kSqrt2Pi);
}

MixtureFit em_init(const std::vector<double>& y, EmInitDiagnostics* diagnostics) {
    if (y.size() < 4) throw std::invalid_argument("em_init: need n >= 4");
    KahanSum neg_sq;
    std::size_t neg_count = 0;
    for (double v : y)
        if (v < 0.0) {
            neg_sq += v * v;
            ++neg_count;
        }
    if (neg_count < 2)
        throw std::invalid_argument("em_init: need at least 2 negative values");

    const double sigma0_sq = neg_sq / static_cast<double>(neg_count);
    const double f0 = kde_gaussian(y, 0.0);
    const double p0 = std::clamp(f0 * kSqrt2Pi * std::sqrt(sigma0_sq), 0.01, 0.99);
    if (diagnostics) *diagnostics = {sigma0_sq, p0};

    MixtureFit fit;
    fit.p0 = p0;
    fit.p1 = 1.0 - p0;
    fit.sigma0 = std::sqrt(sigma0_sq);
    fit.responsibilities.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double fi = kde_gaussian(y, y[i]);
        const double r0 =
            std::min(1.0, p0 * normal_pdf(y[i], 0.0, fit.sigma0) / fi);
        fit.responsibilities[i] = {r0, 1.0 - r0};
    }
    m_step(y, fit);
    return fit;
}

std::vector<std::array<double, 2>> mixture_responsibilities(
    const std::vector<double>& y, const MixtureFit& fit) {
    MixtureFit scratch = fit;
    scratch.responsibilities.resize(y.size());
    e_step(y, scratch);
    return scratch.responsibilities;
}

double mixture_loglik(const std::vector<double>& y, const MixtureFit& fit) {
    MixtureFit scratch = fit;
    scratch.responsibilities.resize(y.size());
    return e_step(y, scratch);
}

MixtureFit em_fit(const std::vector<double>& y, std::size_t max_iters, double tol) {
    MixtureFit fit = em_init(y);
    double prev_ll = e_step(y, fit);
    fit.loglik_trace.push_back(prev_ll);
    for (std::size_t it = 1; it <= max_iters; ++it) {
        m_step(y, fit);
        const double ll = e_step(y, fit);
        fit.loglik_trace.push_back(ll);
        fit.iterations = it;
        if (std::abs(ll - prev_ll) < tol * (1.0 + std::abs(ll))) {
            fit.converged = true;
            break;
        }
        prev_ll = ll;
    }
    return fit;
}

double mixture_threshold(const MixtureFit& fit) {
    check_degenerate(fit);
    if (fit.mu1 <= 0.0)
        throw std::invalid_argument("mixture_threshold: mu1 must be positive");
    const double v0 = fit.sigma0 * fit.sigma0;
    const double v1 = fit.sigma1 * fit.sigma1;
    // log posterior odds g(y) = A y^2 + B y + C; decision region is g >= 0
    const double a = 0.5 / v0 - 0.5 / v1;
    const double b = fit.mu1 / v1;
    const double c = -0.5 * fit.mu1 * fit.mu1 / v1 +
                     std::log(fit.p1 * fit.sigma0 / (fit.p0 * fit.sigma1));
    if (std::abs(a) < 1e-14) {
        return -c / b;  // equal variances: single linear crossing
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        throw std::invalid_argument("mixture_threshold: no decision boundary");
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r1 = qq / a;
    double r2 = c / qq;
    if (r1 > r2) std::swap(r1, r2);
    // upward parabola: class-1 region above the larger root;
    // downward: class-1 region between the roots, bounded below by r1
    return a > 0.0 ? r2 : r1;
}

}  // namespace rt
