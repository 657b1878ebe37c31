#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rt {

/// Observations with optional ground-truth labels (1 = non-null term).
struct LabeledDataset {
    std::vector<double> values;
    std::optional<std::vector<int>> labels;

    bool has_labels() const { return labels.has_value(); }
};

/// Per-method classification risk relative to the oracle.
struct RiskReport {
    std::string method;
    double risk = 0.0;         // count of type I + type II errors
    double oracle_risk = 0.0;
    double ratio = 1.0;        // risk / oracle_risk; 1 when both are 0
    double threshold_used = 0.0;
};

/// c(t) = #{null with value > t} + #{non-null with value <= t}.
std::uint64_t binary_risk(const LabeledDataset& data, double t);

/// Minimizer of c(t) over {-inf} and the distinct observed values.
/// Ties: smallest risk, then largest threshold (fewest selections).
std::pair<double, std::uint64_t> oracle_threshold(const LabeledDataset& data);

/// Benjamini-Hochberg step-up at FDR level q. Returns (rejection count,
/// p-value cutoff), or (0, 0) when nothing is rejected.
std::pair<std::size_t, double> bh_threshold(const std::vector<double>& p_values,
                                            double q);

}  // namespace rt
