#include "rt/ordered.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rt/kahan.hpp"

namespace rt {

OrderedTransform transform(const std::vector<double>& y, const NullModel& model) {
    if (y.size() < 2) throw std::invalid_argument("transform: need n >= 2");
    if (!model.known()) throw std::logic_error("transform: unresolved null model");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("transform: non-finite input");

    OrderedTransform out;
    out.n = y.size();
    out.order.resize(y.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return std::abs(y[a]) > std::abs(y[b]);
                     });

    out.x.resize(y.size());
    for (std::size_t r = 0; r < y.size(); ++r)
        out.x[r] = -log_folded_survival(model, std::abs(y[out.order[r]]));
    return out;
}

double expected_order_stat_sum(std::size_t n, std::size_t i) {
    if (i < 1 || i > n) throw std::out_of_range("expected_order_stat_sum: rank");
    KahanSum s;
    for (std::size_t l = n; l >= i; --l) s += 1.0 / static_cast<double>(l);
    return s;
}

double expected_partial_sum(std::size_t n_window, std::size_t j) {
    if (j < 1 || j > n_window) throw std::out_of_range("expected_partial_sum: rank");
    KahanSum tail;
    for (std::size_t i = n_window; i > j; --i) tail += 1.0 / static_cast<double>(i);
    return static_cast<double>(j) * (1.0 + tail);
}

HarmonicTable::HarmonicTable(std::size_t n) {
    h_.resize(n + 1);
    h_[0] = 0.0;
    KahanSum s;
    for (std::size_t m = 1; m <= n; ++m) {
        s += 1.0 / static_cast<double>(m);
        h_[m] = s;
    }
}

}  // namespace rt
