#include "rt/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rt/mixture.hpp"
#include "rt/null_test.hpp"
#include "rt/rng.hpp"

namespace rt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Errors of a magnitude-ranked selection of the top `k` values.
std::uint64_t selection_risk(const LabeledDataset& data,
                             const std::vector<std::size_t>& selected) {
    const auto& labels = *data.labels;
    std::vector<char> in_sel(data.values.size(), 0);
    for (std::size_t i : selected) in_sel[i] = 1;
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 0 ? in_sel[i] : !in_sel[i]) ++errors;
    }
    return errors;
}

// RT methods induce a threshold at the k-th largest value (the smallest
// selected one, so the threshold itself counts as selected).
double induced_threshold(const std::vector<double>& values, std::size_t k) {
    if (k == 0) return kInf;
    std::vector<double> v(values);
    std::nth_element(v.begin(), v.begin() + (k - 1), v.end(), std::greater<>());
    return v[k - 1];
}

std::uint64_t threshold_risk_inclusive(const LabeledDataset& data, double t) {
    const auto& labels = *data.labels;
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < data.values.size(); ++i) {
        const bool selected = data.values[i] >= t;
        if (labels[i] == 0 ? selected : !selected) ++errors;
    }
    return errors;
}

double ratio_of(double risk, double oracle_risk) {
    if (oracle_risk > 0.0) return risk / oracle_risk;
    return risk == 0.0 ? 1.0 : risk + 1.0;
}

}  // namespace

void Scenario::validate() const {
    if (n < 2) throw std::invalid_argument("Scenario: n must be >= 2");
    if (n_signal + n_signal2 >= n)
        throw std::invalid_argument("Scenario: signals must be fewer than n");
    if (replicates < 1) throw std::invalid_argument("Scenario: replicates >= 1");
}

MethodConfig MethodConfig::fixed_rt(std::size_t k_n) {
    MethodConfig m;
    m.kind = Kind::FixedRT;
    m.window = k_n;
    return m;
}
MethodConfig MethodConfig::varying_rt(std::size_t kappa_n) {
    MethodConfig m;
    m.kind = Kind::VaryingRT;
    m.window = kappa_n;
    return m;
}
MethodConfig MethodConfig::unknown_theta_rt(WindowMode mode) {
    MethodConfig m;
    m.kind = Kind::UnknownThetaRT;
    m.window = mode.param;
    m.window_kind = mode.kind;
    return m;
}
MethodConfig MethodConfig::bh(double q) {
    MethodConfig m;
    m.kind = Kind::BH;
    m.q = q;
    return m;
}
MethodConfig MethodConfig::gmm() {
    MethodConfig m;
    m.kind = Kind::GMM;
    return m;
}
MethodConfig MethodConfig::oracle() {
    MethodConfig m;
    m.kind = Kind::Oracle;
    return m;
}

std::string MethodConfig::id() const {
    switch (kind) {
        case Kind::FixedRT: return "fixed-rt";
        case Kind::VaryingRT: return "varying-rt";
        case Kind::UnknownThetaRT:
            return window_kind == WindowMode::Kind::Fixed ? "unknown-sigma-rt-fixed"
                                                          : "unknown-sigma-rt-varying";
        case Kind::BH: return "bh";
        case Kind::GMM: return "gmm";
        case Kind::Oracle: return "oracle";
    }
    return "?";
}

std::string MethodConfig::params() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::FixedRT: os << "K_n=" << window; break;
        case Kind::VaryingRT: os << "kappa_n=" << window; break;
        case Kind::UnknownThetaRT: os << "window=" << window; break;
        case Kind::BH: os << "q=" << q; break;
        default: break;
    }
    return os.str();
}

std::optional<double> CalibrationTable::lookup(std::size_t n, double level) const {
    for (const auto& e : entries)
        if (e.n == n && std::abs(e.level - level) < 1e-12) return e.d_alpha;
    return std::nullopt;
}

LabeledDataset generate(const Scenario& scenario, std::size_t replicate_index) {
    scenario.validate();
    Rng rng(replicate_seed(scenario.seed, replicate_index));
    LabeledDataset data;
    data.values.reserve(scenario.n);
    std::vector<int> labels;
    labels.reserve(scenario.n);
    for (std::size_t i = 0; i < scenario.n_signal; ++i) {
        data.values.push_back(sample_one(scenario.signal_law, rng));
        labels.push_back(1);
    }
    for (std::size_t i = 0; i < scenario.n_signal2; ++i) {
        data.values.push_back(sample_one(scenario.signal_law2, rng));
        labels.push_back(1);
    }
    for (std::size_t i = scenario.n_signal + scenario.n_signal2; i < scenario.n; ++i) {
        data.values.push_back(sample_one(scenario.null_law, rng));
        labels.push_back(0);
    }
    data.labels = std::move(labels);
    return data;
}

std::vector<RiskReport> evaluate_replicate(const Scenario& scenario,
                                           const std::vector<MethodConfig>& methods,
                                           std::size_t replicate_index) {
    if (methods.empty())
        throw std::invalid_argument("evaluate_replicate: no methods");
    const LabeledDataset data = generate(scenario, replicate_index);
    const auto [oracle_t, oracle_risk] = oracle_threshold(data);
    const double orisk = static_cast<double>(oracle_risk);

    std::vector<RiskReport> out;
    out.reserve(methods.size());
    for (const auto& m : methods) {
        RiskReport rep;
        rep.method = m.id();
        rep.oracle_risk = orisk;
        switch (m.kind) {
            case MethodConfig::Kind::Oracle: {
                rep.risk = orisk;
                rep.threshold_used = oracle_t;
                break;
            }
            case MethodConfig::Kind::FixedRT: {
                const auto sel = select_fixed_window(data.values, scenario.null_law,
                                                     m.window);
                const double t = induced_threshold(data.values, sel.k_hat);
                rep.risk = static_cast<double>(threshold_risk_inclusive(data, t));
                rep.threshold_used = t;
                break;
            }
            case MethodConfig::Kind::VaryingRT: {
                const auto sel = select_varying_window(data.values, scenario.null_law,
                                                       m.window);
                const double t = induced_threshold(data.values, sel.k_hat);
                rep.risk = static_cast<double>(threshold_risk_inclusive(data, t));
                rep.threshold_used = t;
                break;
            }
            case MethodConfig::Kind::UnknownThetaRT: {
                const auto sel = select_unknown_theta(
                    data.values, NullModel::gaussian_unknown_variance(),
                    {m.window_kind, m.window});
                const double t = induced_threshold(data.values, sel.k_hat);
                rep.risk = static_cast<double>(threshold_risk_inclusive(data, t));
                rep.threshold_used = t;
                break;
            }
            case MethodConfig::Kind::BH: {
                if (!scenario.null_law.known())
                    throw std::invalid_argument("BH needs a known null law");
                std::vector<double> p(data.values.size());
                for (std::size_t i = 0; i < p.size(); ++i)
                    p[i] = std::exp(log_folded_survival(scenario.null_law,
                                                        std::abs(data.values[i])));
                const auto [k_star, cutoff] = bh_threshold(p, m.q);
                (void)cutoff;
                // the k* smallest p-values are the k* largest magnitudes
                std::vector<std::size_t> idx(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) idx[i] = i;
                std::stable_sort(idx.begin(), idx.end(),
                                 [&](std::size_t a, std::size_t b) {
                                     return p[a] < p[b];
                                 });
                idx.resize(k_star);
                rep.risk = static_cast<double>(selection_risk(data, idx));
                rep.threshold_used =
                    k_star == 0 ? kInf : std::abs(data.values[idx.back()]);
                break;
            }
            case MethodConfig::Kind::GMM: {
                double t = kInf;
                try {
                    t = mixture_threshold(em_fit(data.values));
                } catch (const DegenerateFitError&) {
                    // degenerate fit selects nothing
                } catch (const std::invalid_argument&) {
                }
                rep.risk = static_cast<double>(binary_risk(data, t));
                rep.threshold_used = t;
                break;
            }
        }
        rep.ratio = ratio_of(rep.risk, orisk);
        out.push_back(rep);
    }
    return out;
}

std::vector<MethodSummary> run_comparison(const Scenario& scenario,
                                          const std::vector<MethodConfig>& methods,
                                          unsigned threads) {
    scenario.validate();
    if (methods.empty()) throw std::invalid_argument("run_comparison: no methods");
    const std::size_t reps = scenario.replicates;
    std::vector<std::vector<RiskReport>> per_rep(reps);

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= reps) return;
            per_rep[r] = evaluate_replicate(scenario, methods, r);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<MethodSummary> out(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        double sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) sum += per_rep[r][m].ratio;
        const double mean = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            const double d = per_rep[r][m].ratio - mean;
            ss += d * d;
        }
        out[m].scenario_id = scenario.id;
        out[m].method_id = methods[m].id();
        out[m].params = methods[m].params();
        out[m].mean_ratio = mean;
        out[m].std_error =
            reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) /
                                 static_cast<double>(reps))
                     : 0.0;
        out[m].replicates = reps;
    }
    return out;
}

double calibrate(std::size_t n, double level, std::size_t replicates,
                 std::uint64_t seed) {
    if (level <= 0.0 || level >= 1.0)
        throw std::invalid_argument("calibrate: level must be in (0,1)");
    if (replicates < 1000)
        throw std::invalid_argument("calibrate: need >= 1000 replicates");
    std::vector<double> d(replicates);

    unsigned threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    std::atomic<std::size_t> next{0};
    const NullModel exp1 = NullModel::exponential(1.0);
    auto worker = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= replicates) return;
            const auto y = sample(exp1, n, replicate_seed(seed, r));
            d[r] = d_statistic(transform(y, exp1));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::sort(d.begin(), d.end());
    const double target = (1.0 - level) * static_cast<double>(replicates);
    std::size_t idx = static_cast<std::size_t>(std::ceil(target));
    if (idx < 1) idx = 1;
    if (idx > replicates) idx = replicates;
    return d[idx - 1];
}

std::string table_to_csv(const std::vector<MethodSummary>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "scenario_id,method_id,params,mean_ratio,std_error,replicates\n";
    for (const auto& r : rows)
        os << r.scenario_id << ',' << r.method_id << ',' << r.params << ','
           << r.mean_ratio << ',' << r.std_error << ',' << r.replicates << '\n';
    return os.str();
}

Preset preset(const std::string& name, std::size_t replicates, std::uint64_t seed) {
    Preset p;
    if (name == "table1") {
        // known-null grid: Exp(1) nulls simulated on the transformed scale,
        // Gamma(alpha, beta) signals
        for (double alpha : {5.0, 6.0, 7.0}) {
            for (double beta : {1.0, 2.0, 3.0}) {
                Scenario s;
                std::ostringstream id;
                id << "table1-a" << alpha << "-b" << beta;
                s.id = id.str();
                s.n = 10000;
                s.n_signal = 1000;
                s.null_law = NullModel::exponential(1.0);
                s.signal_law = SignalLaw::gamma(alpha, beta);
                s.replicates = replicates;
                s.seed = seed;
                p.scenarios.push_back(s);
            }
        }
        p.methods = {MethodConfig::bh(0.01), MethodConfig::bh(0.05),
                     MethodConfig::bh(0.1), MethodConfig::fixed_rt(5000),
                     MethodConfig::varying_rt(5000), MethodConfig::oracle()};
    } else if (name == "table2-top") {
        for (double mu : {1.0, 2.0, 3.0}) {
            for (double sigma : {1.0, 2.0, 3.0}) {
                Scenario s;
                std::ostringstream id;
                id << "table2-m" << mu << "-s" << sigma;
                s.id = id.str();
                s.n = 1000;
                s.n_signal = 100;
                s.null_law = NullModel::standard_gaussian();
                s.signal_law = SignalLaw::gaussian(mu, sigma);
                s.replicates = replicates;
                s.seed = seed;
                p.scenarios.push_back(s);
            }
        }
        p.methods = {MethodConfig::gmm(),
                     MethodConfig::unknown_theta_rt(WindowMode::fixed(500)),
                     MethodConfig::unknown_theta_rt(WindowMode::varying(500)),
                     MethodConfig::oracle()};
    } else if (name == "table2-bottom") {
        Scenario s;
        s.id = "table2-bimodal";
        s.n = 5000;
        s.n_signal = 950;
        s.signal_law = SignalLaw::gaussian(3.0, 1.0);
        s.n_signal2 = 50;
        s.signal_law2 = SignalLaw::gaussian(20.0, 1.0);
        s.null_law = NullModel::standard_gaussian();
        s.replicates = replicates;
        s.seed = seed;
        p.scenarios.push_back(s);
        p.methods = {MethodConfig::gmm(),
                     MethodConfig::unknown_theta_rt(WindowMode::fixed(2500)),
                     MethodConfig::unknown_theta_rt(WindowMode::varying(2500)),
                     MethodConfig::oracle()};
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return p;
}

}  // namespace rt
