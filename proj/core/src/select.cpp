#include "rt/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rt/kahan.hpp"

namespace rt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// eta_k for one window position: fresh compensated prefix scan over
// x[k], ..., x[k + width - 1], centered by the conditional expectation given
// the window total. `null_count` is the number of null order statistics the
// expectations range over (n - k in every use).
double eta_at(const std::vector<double>& x, std::size_t k, std::size_t width,
              std::size_t null_count, const HarmonicTable& harm,
              double norm, std::vector<double>& prefix) {
    KahanSum t;
    for (std::size_t j = 1; j <= width; ++j) {
        t += x[k + j - 1];
        prefix[j - 1] = t;
    }
    const double total = prefix[width - 1];
    const double e_total = harm.expected_prefix(null_count, width);
    double max_gap = 0.0;
    for (std::size_t j = 1; j <= width; ++j) {
        const double q = harm.expected_prefix(null_count, j) / e_total * total;
        max_gap = std::max(max_gap, std::abs(prefix[j - 1] - q));
    }
    return max_gap / norm;
}

void finalize(SelectionResult& res, const std::vector<double>& y,
              const std::vector<std::size_t>& order, std::size_t scan_top) {
    // argmin, smallest k on ties
    std::size_t best = 0;
    for (std::size_t k = 1; k < res.eta.size(); ++k)
        if (res.eta[k] < res.eta[best]) best = k;
    res.k_hat = best;
    res.at_scan_boundary = (best == scan_top);
    res.selected.assign(order.begin(), order.begin() + best);
    res.threshold_value =
        best == 0 ? kInf : std::abs(y[order[best - 1]]);
}

}  // namespace

SelectionResult select_fixed_window(const std::vector<double>& y,
                                    const NullModel& model, std::size_t window) {
    const std::size_t n = y.size();
    if (window < 1 || window > n - 1)
        throw std::invalid_argument("select_fixed_window: window out of range");
    const OrderedTransform ot = transform(y, model);
    const HarmonicTable harm(n);
    const double norm = std::sqrt(static_cast<double>(n));

    SelectionResult res;
    const std::size_t k_max = n - window;
    res.eta.resize(k_max + 1);
    std::vector<double> prefix(window);
    for (std::size_t k = 0; k <= k_max; ++k)
        res.eta[k] = eta_at(ot.x, k, window, n - k, harm, norm, prefix);
    finalize(res, y, ot.order, k_max);
    return res;
}

SelectionResult select_varying_window(const std::vector<double>& y,
                                      const NullModel& model,
                                      std::size_t kappa_n) {
    const std::size_t n = y.size();
    if (kappa_n < 1 || kappa_n > n - 1)
        throw std::invalid_argument("select_varying_window: kappa_n out of range");
    const OrderedTransform ot = transform(y, model);
    const HarmonicTable harm(n);

    SelectionResult res;
    const std::size_t k_max = n - kappa_n;
    res.eta.resize(k_max + 1);
    std::vector<double> prefix(n);
    for (std::size_t k = 0; k <= k_max; ++k) {
        const std::size_t width = n - k;
        res.eta[k] = eta_at(ot.x, k, width, width, harm,
                            std::sqrt(static_cast<double>(width)), prefix);
    }
    finalize(res, y, ot.order, k_max);
    return res;
}

SelectionResult select_unknown_theta(const std::vector<double>& y,
                                     const NullModel& family, WindowMode mode) {
    if (family.kind != NullModel::Kind::GaussianUnknownVariance)
        throw std::invalid_argument(
            "select_unknown_theta: family must be GaussianUnknownVariance");
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("select_unknown_theta: need n >= 2");
    if (mode.param < 2 || mode.param > n - 1)
        throw std::invalid_argument(
            "select_unknown_theta: window must leave >= 2 residual points");
    for (double v : y)
        if (!std::isfinite(v))
            throw std::invalid_argument("select_unknown_theta: non-finite input");

    // magnitudes sorted descending, ties by original index
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(y[a]) > std::abs(y[b]);
    });
    std::vector<double> mag(n);
    for (std::size_t r = 0; r < n; ++r) mag[r] = std::abs(y[order[r]]);

    // suffix mean squares: sigma_k^2 = (1/(n-k)) sum_{i=k+1}^n Y_(i)^2
    std::vector<double> sigma2(n);
    KahanSum ssq;
    for (std::size_t k = n; k-- > 0;) {
        ssq += mag[k] * mag[k];
        sigma2[k] = static_cast<double>(ssq) / static_cast<double>(n - k);
    }

    const bool fixed = mode.kind == WindowMode::Kind::Fixed;
    const std::size_t k_max = n - mode.param;
    const HarmonicTable harm(n);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    SelectionResult res;
    res.eta.resize(k_max + 1);
    std::vector<double> x(n);
    std::vector<double> prefix(n);
    for (std::size_t k = 0; k <= k_max; ++k) {
        const std::size_t width = fixed ? mode.param : n - k;
        const double s2 = sigma2[k];
        if (s2 <= 0.0) {
            // all residual values are zero; any nonzero window entry is
            // infinitely significant under a degenerate null
            res.eta[k] = mag[k] > 0.0 ? kInf : 0.0;
            continue;
        }
        const NullModel resolved = NullModel::gaussian(std::sqrt(s2));
        for (std::size_t i = 0; i < width; ++i)
            x[i] = -log_folded_survival(resolved, mag[k + i]);
        const double norm = fixed ? sqrt_n : std::sqrt(static_cast<double>(width));
        res.eta[k] = eta_at(x, 0, width, n - k, harm, norm, prefix);
    }
    finalize(res, y, order, k_max);
    res.estimated_theta = sigma2[res.k_hat] > 0.0
                              ? std::optional<double>(sigma2[res.k_hat])
                              : std::nullopt;
    return res;
}

}  // namespace rt
