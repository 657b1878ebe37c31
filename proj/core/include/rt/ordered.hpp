#pragma once

#include <cstddef>
#include <vector>

#include "rt/distributions.hpp"

namespace rt {

/// Sorted |Y| mapped through X = -log(1 - F_|eps|(|Y|)). Under the null the
/// entries are ordered Exp(1) draws, which is what makes the centered
/// statistics distribution-free.
struct OrderedTransform {
    std::vector<double> x;           // nonincreasing, finite, >= 0
    std::vector<std::size_t> order;  // rank -> original index
    std::size_t n = 0;
};

/// Sort |y| descending (ties by original index ascending) and apply the
/// exponential transform under a fully known null model.
OrderedTransform transform(const std::vector<double>& y, const NullModel& model);

/// a_i = E X_(i) = sum_{l=i}^{n} 1/l for ordered Exp(1) order statistics.
double expected_order_stat_sum(std::size_t n, std::size_t i);

/// E T_j = sum_{i=1}^{j} a_i over a window of `n_window` null order
/// statistics; equals the closed form j (1 + sum_{i=j+1}^{n_window} 1/i).
double expected_partial_sum(std::size_t n_window, std::size_t j);

/// Prefix harmonic numbers H_0..H_n, shared by the selectors so expectations
/// are O(1) per (k, j).
class HarmonicTable {
public:
    explicit HarmonicTable(std::size_t n);

    /// H_m = sum_{l=1}^{m} 1/l
    double h(std::size_t m) const { return h_[m]; }

    /// E T_j within a window of m null order statistics: j (1 + H_m - H_j).
    double expected_prefix(std::size_t m, std::size_t j) const {
        return static_cast<double>(j) * (1.0 + h_[m] - h_[j]);
    }

private:
    std::vector<double> h_;
};

}  // namespace rt
