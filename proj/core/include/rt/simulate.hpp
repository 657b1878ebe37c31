#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rt/distributions.hpp"
#include "rt/risk.hpp"
#include "rt/select.hpp"

namespace rt {

/// One simulation setting: a null law, one or two signal components with
/// exact per-component counts, and the replicate/seed bookkeeping.
struct Scenario {
    std::string id;
    std::size_t n = 0;
    std::size_t n_signal = 0;
    NullModel null_law;
    SignalLaw signal_law;
    std::size_t n_signal2 = 0;  // optional second component (bimodal case)
    SignalLaw signal_law2;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// A method entry in a comparison run.
struct MethodConfig {
    enum class Kind { FixedRT, VaryingRT, UnknownThetaRT, BH, GMM, Oracle };

    Kind kind = Kind::Oracle;
    std::size_t window = 0;                          // K_n or kappa_n
    WindowMode::Kind window_kind = WindowMode::Kind::Fixed;  // UnknownThetaRT only
    double q = 0.05;                                 // BH level

    static MethodConfig fixed_rt(std::size_t k_n);
    static MethodConfig varying_rt(std::size_t kappa_n);
    static MethodConfig unknown_theta_rt(WindowMode mode);
    static MethodConfig bh(double q);
    static MethodConfig gmm();
    static MethodConfig oracle();

    std::string id() const;
    std::string params() const;
};

/// Aggregate over replicates for one (scenario, method) pair.
struct MethodSummary {
    std::string scenario_id;
    std::string method_id;
    std::string params;
    double mean_ratio = 0.0;
    double std_error = 0.0;
    std::size_t replicates = 0;
};

/// Monte Carlo critical values for the global-null statistic.
struct CalibrationTable {
    struct Entry {
        std::size_t n;
        double level;
        double d_alpha;
    };
    std::vector<Entry> entries;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;

    std::optional<double> lookup(std::size_t n, double level) const;
};

/// Dataset for replicate `replicate_index`; signal draws carry label 1.
/// Deterministic in (scenario.seed, replicate_index).
LabeledDataset generate(const Scenario& scenario, std::size_t replicate_index);

/// Risk of every method on a single replicate, each ratioed to that
/// replicate's oracle risk.
std::vector<RiskReport> evaluate_replicate(const Scenario& scenario,
                                           const std::vector<MethodConfig>& methods,
                                           std::size_t replicate_index);

/// Mean risk ratios over scenario.replicates replicates. Replicates run in
/// parallel; aggregation is reduced in replicate order so output is
/// bitwise reproducible.
std::vector<MethodSummary> run_comparison(const Scenario& scenario,
                                          const std::vector<MethodConfig>& methods,
                                          unsigned threads = 0);

/// Empirical (1 - level)-quantile of D_n over pure-null replicates.
double calibrate(std::size_t n, double level, std::size_t replicates,
                 std::uint64_t seed);

/// CSV with header: scenario_id,method_id,params,mean_ratio,std_error,replicates
std::string table_to_csv(const std::vector<MethodSummary>& rows);

/// Named experiment presets: "table1", "table2-top", "table2-bottom".
struct Preset {
    std::vector<Scenario> scenarios;
    std::vector<MethodConfig> methods;
};
Preset preset(const std::string& name, std::size_t replicates, std::uint64_t seed);

}  // namespace rt
