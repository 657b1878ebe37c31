#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rt/ordered.hpp"

namespace rt {

/// Output of the random-threshold selectors. The scan always starts at k = 0
/// (the global null), so "nothing selected" is representable.
struct SelectionResult {
    std::size_t k_hat = 0;
    std::vector<double> eta;            // eta_k for k = eta_offset .. eta_offset + size - 1
    std::size_t eta_offset = 0;
    double threshold_value = 0.0;       // |Y|_(k_hat); +inf when k_hat = 0
    std::vector<std::size_t> selected;  // original indices of the k_hat largest |Y|
    std::optional<double> estimated_theta;  // sigma^2 for the unknown-variance variant
    bool at_scan_boundary = false;      // argmin hit the top of the scanned range
};

/// Window specification for the unknown-parameter selector.
struct WindowMode {
    enum class Kind { Fixed, Varying };
    Kind kind = Kind::Fixed;
    std::size_t param = 0;  // K_n (fixed) or kappa_n (varying)

    static WindowMode fixed(std::size_t k_n) { return {Kind::Fixed, k_n}; }
    static WindowMode varying(std::size_t kappa_n) { return {Kind::Varying, kappa_n}; }
};

/// Sliding window of width K_n; eta_k = max_{j<=K_n} |T_{k,j} - Q_{k,j}| / sqrt(n).
SelectionResult select_fixed_window(const std::vector<double>& y,
                                    const NullModel& model, std::size_t window);

/// Shrinking window of width n - k; eta_k = max_{j<=n-k} |T_{k,j} - Q_{k,j}|
/// / sqrt(n - k); kappa_n bounds the scan from above (k <= n - kappa_n).
SelectionResult select_varying_window(const std::vector<double>& y,
                                      const NullModel& model, std::size_t kappa_n);

/// Unknown-parameter variant: at each k the noise parameter is re-estimated
/// from Y_(k+1..n) (mean square for the Gaussian family) and the transform is
/// recomputed for the window before forming eta_k.
SelectionResult select_unknown_theta(const std::vector<double>& y,
                                     const NullModel& family, WindowMode mode);

}  // namespace rt
