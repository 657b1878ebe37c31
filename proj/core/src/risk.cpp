#include "rt/risk.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rt {

std::uint64_t binary_risk(const LabeledDataset& data, double t) {
    if (!data.has_labels()) throw std::invalid_argument("binary_risk: labels required");
    const auto& labels = *data.labels;
    if (labels.size() != data.values.size())
        throw std::invalid_argument("binary_risk: label/value length mismatch");
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < data.values.size(); ++i) {
        const bool selected = data.values[i] > t;
        if (labels[i] == 0 ? selected : !selected) ++errors;
    }
    return errors;
}

std::pair<double, std::uint64_t> oracle_threshold(const LabeledDataset& data) {
    if (!data.has_labels())
        throw std::invalid_argument("oracle_threshold: labels required");
    const auto& labels = *data.labels;
    const std::size_t n = data.values.size();
    if (n < 1) throw std::invalid_argument("oracle_threshold: empty dataset");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return data.values[a] < data.values[b];
    });

    // at t = -inf everything is selected: errors = number of nulls
    std::uint64_t n_null = 0;
    for (int z : labels) n_null += (z == 0);

    double best_t = -std::numeric_limits<double>::infinity();
    std::uint64_t best_risk = n_null;
    std::uint64_t risk = n_null;
    // sweep t upward through the distinct values; raising t past value v
    // deselects every observation equal to v
    std::size_t i = 0;
    while (i < n) {
        const double v = data.values[idx[i]];
        while (i < n && data.values[idx[i]] == v) {
            if (labels[idx[i]] == 0)
                --risk;  // null no longer falsely selected
            else
                ++risk;  // signal now missed
            ++i;
        }
        if (risk <= best_risk) {  // ties -> larger threshold
            best_risk = risk;
            best_t = v;
        }
    }
    return {best_t, best_risk};
}

std::pair<std::size_t, double> bh_threshold(const std::vector<double>& p_values,
                                            double q) {
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("bh_threshold: bad level");
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("bh_threshold: p-value outside [0,1]");
    const std::size_t n = p_values.size();
    std::vector<double> sorted(p_values);
    std::sort(sorted.begin(), sorted.end());
    std::size_t k_star = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (sorted[i - 1] <= static_cast<double>(i) * q / static_cast<double>(n))
            k_star = i;
    if (k_star == 0) return {0, 0.0};
    return {k_star, sorted[k_star - 1]};
}

}  // namespace rt
