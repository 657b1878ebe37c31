// Command-line front end: global-null test, random-threshold selection,
// simulation tables, and Monte Carlo calibration of the critical value.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rt/null_test.hpp"
#include "rt/select.hpp"
#include "rt/simulate.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

// One score per line; '#' starts a comment; with a column name the file is
// parsed as CSV with a header row.
std::vector<double> parse_scores(const std::string& content,
                                 const std::optional<std::string>& column) {
    std::vector<double> out;
    std::istringstream in(content);
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> col_index;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line.erase(0, start);

        std::string field = line;
        if (column) {
            std::vector<std::string> fields;
            std::istringstream ls(line);
            std::string f;
            while (std::getline(ls, f, ',')) fields.push_back(f);
            if (!col_index) {  // header row
                for (std::size_t i = 0; i < fields.size(); ++i)
                    if (fields[i] == *column) col_index = i;
                if (!col_index)
                    throw UsageError("column '" + *column + "' not found in header");
                continue;
            }
            if (*col_index >= fields.size())
                throw UsageError("line " + std::to_string(lineno) +
                                 ": missing column value");
            field = fields[*col_index];
        }

        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &consumed);
        } catch (const std::exception&) {
            throw UsageError("line " + std::to_string(lineno) +
                             ": cannot parse '" + field + "' as a number");
        }
        if (consumed != field.size())
            throw UsageError("line " + std::to_string(lineno) +
                             ": trailing characters in '" + field + "'");
        out.push_back(v);
    }
    return out;
}

rt::NullModel parse_null_model(const std::string& spec) {
    if (spec == "gaussian" || spec == "std-gaussian")
        return rt::NullModel::standard_gaussian();
    if (spec.rfind("gaussian:", 0) == 0)
        return rt::NullModel::gaussian(std::stod(spec.substr(9)));
    if (spec.rfind("exp:", 0) == 0)
        return rt::NullModel::exponential(std::stod(spec.substr(4)));
    if (spec == "exp") return rt::NullModel::exponential(1.0);
    throw UsageError("unknown null model spec: " + spec +
                     " (use gaussian, gaussian:SIGMA, exp, exp:RATE)");
}

std::string calibration_key(std::size_t n, double level) {
    return std::to_string(n) + "," + json(level).dump();
}

rt::CalibrationTable load_calibration(const std::string& path) {
    json j = json::parse(read_file(path));
    rt::CalibrationTable table;
    for (const auto& [key, val] : j.at("entries").items()) {
        const auto comma = key.find(',');
        rt::CalibrationTable::Entry e;
        e.n = std::stoul(key.substr(0, comma));
        e.level = std::stod(key.substr(comma + 1));
        e.d_alpha = val.get<double>();
        table.entries.push_back(e);
    }
    if (j.contains("provenance")) {
        table.replicates = j["provenance"].value("replicates", std::size_t{0});
        table.seed = j["provenance"].value("seed", std::uint64_t{0});
    }
    return table;
}

json manifest(const std::string& command, const json& params,
              std::uint64_t seed, std::optional<std::uint64_t> input_digest) {
    json m{{"command", command},
           {"parameters", params},
           {"seed", seed},
           {"version", kVersion},
           {"timestamp", iso_timestamp()}};
    if (input_digest) {
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(*input_digest));
        m["input_digest"] = std::string("fnv1a64:") + buf;
    }
    return m;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << content;
}

std::vector<rt::MethodConfig> parse_methods(const std::string& spec) {
    std::vector<rt::MethodConfig> out;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        std::string name = tok;
        std::string arg;
        if (auto pos = tok.rfind(':'); pos != std::string::npos) {
            name = tok.substr(0, pos);
            arg = tok.substr(pos + 1);
        }
        if (name == "fixed-rt")
            out.push_back(rt::MethodConfig::fixed_rt(std::stoul(arg)));
        else if (name == "varying-rt")
            out.push_back(rt::MethodConfig::varying_rt(std::stoul(arg)));
        else if (name == "unknown-sigma-rt-fixed")
            out.push_back(rt::MethodConfig::unknown_theta_rt(
                rt::WindowMode::fixed(std::stoul(arg))));
        else if (name == "unknown-sigma-rt-varying")
            out.push_back(rt::MethodConfig::unknown_theta_rt(
                rt::WindowMode::varying(std::stoul(arg))));
        else if (name == "bh")
            out.push_back(rt::MethodConfig::bh(std::stod(arg)));
        else if (name == "gmm")
            out.push_back(rt::MethodConfig::gmm());
        else if (name == "oracle")
            out.push_back(rt::MethodConfig::oracle());
        else
            throw UsageError("unknown method: " + name);
    }
    if (out.empty()) throw UsageError("empty method list");
    return out;
}

rt::SignalLaw parse_signal_law(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "constant") return rt::SignalLaw::constant(j.at("value"));
    if (kind == "gaussian") return rt::SignalLaw::gaussian(j.at("mu"), j.at("sigma"));
    if (kind == "gamma") return rt::SignalLaw::gamma(j.at("shape"), j.at("scale"));
    if (kind == "two-gaussian")
        return rt::SignalLaw::two_gaussian(j.at("mu1"), j.at("sigma1"), j.at("mu2"),
                                           j.at("sigma2"), j.at("weight2"));
    throw UsageError("unknown signal law kind: " + kind);
}

rt::Scenario parse_scenario(const json& j, std::size_t replicates,
                            std::uint64_t seed) {
    rt::Scenario s;
    s.id = j.value("id", std::string("custom"));
    s.n = j.at("n").get<std::size_t>();
    s.n_signal = j.at("n_signal").get<std::size_t>();
    s.null_law = parse_null_model(j.at("null").get<std::string>());
    s.signal_law = parse_signal_law(j.at("signal"));
    if (j.contains("n_signal2")) {
        s.n_signal2 = j.at("n_signal2").get<std::size_t>();
        s.signal_law2 = parse_signal_law(j.at("signal2"));
    }
    s.replicates = replicates;
    s.seed = seed;
    return s;
}

// ---------------------------------------------------------------------------

int cmd_test(const std::string& input, const std::string& null_spec,
             double level, const std::string& calib_path,
             const std::optional<std::string>& column) {
    const std::string content = read_file(input);
    const auto scores = parse_scores(content, column);
    if (scores.size() < 2) throw UsageError("need at least 2 scores");
    const auto model = parse_null_model(null_spec);

    std::optional<double> critical;
    if (!calib_path.empty()) {
        const auto table = load_calibration(calib_path);
        critical = table.lookup(scores.size(), level);
        if (!critical)
            throw UsageError("calibration file has no entry for n=" +
                             std::to_string(scores.size()) + ", level=" +
                             json(level).dump() + "; run `rt calibrate` first");
    } else if (!(level == 0.05 && scores.size() >= 100)) {
        throw UsageError(
            "no built-in critical value for this (n, level); run `rt calibrate` "
            "and pass --calibration");
    }

    const auto res = rt::null_test(scores, model, level, critical);
    json out{{"command", "test"},
             {"n", scores.size()},
             {"d_n", res.d_n},
             {"critical_value", res.critical_value},
             {"level", res.level},
             {"reject", res.reject},
             {"manifest",
              manifest("test",
                       json{{"input", input}, {"null", null_spec}, {"level", level}},
                       0, fnv1a_digest(content))}};
    std::cout << out.dump(2) << "\n";
    return res.reject ? kExitRejected : kExitOk;
}

int cmd_threshold(const std::string& input, const std::string& null_spec,
                  const std::string& variant, std::size_t window,
                  const std::string& window_mode, const std::string& out_path,
                  const std::string& eta_path,
                  const std::optional<std::string>& column) {
    const std::string content = read_file(input);
    const auto scores = parse_scores(content, column);
    if (scores.size() < 2) throw UsageError("need at least 2 scores");

    rt::SelectionResult sel;
    if (variant == "fixed") {
        sel = rt::select_fixed_window(scores, parse_null_model(null_spec), window);
    } else if (variant == "varying") {
        sel = rt::select_varying_window(scores, parse_null_model(null_spec), window);
    } else if (variant == "unknown-sigma") {
        const auto mode = window_mode == "varying" ? rt::WindowMode::varying(window)
                                                   : rt::WindowMode::fixed(window);
        sel = rt::select_unknown_theta(scores,
                                       rt::NullModel::gaussian_unknown_variance(),
                                       mode);
    } else {
        throw UsageError("unknown variant: " + variant);
    }

    json out{{"command", "threshold"},
             {"n", scores.size()},
             {"variant", variant},
             {"window", window},
             {"k_hat", sel.k_hat},
             {"threshold", sel.threshold_value},
             {"at_scan_boundary", sel.at_scan_boundary},
             {"manifest",
              manifest("threshold",
                       json{{"input", input},
                            {"null", variant == "unknown-sigma" ? "unknown-sigma"
                                                                : null_spec},
                            {"variant", variant},
                            {"window", window},
                            {"window_mode", window_mode}},
                       0, fnv1a_digest(content))}};
    if (sel.estimated_theta) out["sigma2_hat"] = *sel.estimated_theta;

    if (!out_path.empty()) {
        std::ostringstream os;
        for (std::size_t i : sel.selected) os << i << "\n";
        write_text(out_path, os.str());
        out["selected_file"] = out_path;
    }
    if (!eta_path.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "k,eta\n";
        for (std::size_t i = 0; i < sel.eta.size(); ++i)
            os << (sel.eta_offset + i) << ',' << sel.eta[i] << "\n";
        write_text(eta_path, os.str());
        out["eta_file"] = eta_path;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& preset_name, const std::string& spec_path,
                 const std::string& methods_spec, std::size_t replicates,
                 std::uint64_t seed, const std::string& output) {
    std::vector<rt::Scenario> scenarios;
    std::vector<rt::MethodConfig> methods;
    if (!preset_name.empty()) {
        auto p = rt::preset(preset_name, replicates, seed);
        scenarios = std::move(p.scenarios);
        methods = std::move(p.methods);
    } else if (!spec_path.empty()) {
        const json j = json::parse(read_file(spec_path));
        if (j.is_array())
            for (const auto& sj : j) scenarios.push_back(parse_scenario(sj, replicates, seed));
        else
            scenarios.push_back(parse_scenario(j, replicates, seed));
    } else {
        throw UsageError("either --preset or --spec is required");
    }
    if (!methods_spec.empty()) methods = parse_methods(methods_spec);
    if (methods.empty()) throw UsageError("no methods configured");

    std::vector<rt::MethodSummary> rows;
    for (const auto& s : scenarios) {
        auto part = rt::run_comparison(s, methods);
        rows.insert(rows.end(), part.begin(), part.end());
    }

    write_text(output + ".csv", rt::table_to_csv(rows));
    json jrows = json::array();
    for (const auto& r : rows)
        jrows.push_back(json{{"scenario_id", r.scenario_id},
                             {"method_id", r.method_id},
                             {"params", r.params},
                             {"mean_ratio", r.mean_ratio},
                             {"std_error", r.std_error},
                             {"replicates", r.replicates}});
    write_text(output + ".json", json{{"rows", jrows}}.dump(2) + "\n");
    write_text(output + ".manifest.json",
               manifest("simulate",
                        json{{"preset", preset_name},
                             {"spec", spec_path},
                             {"methods", methods_spec},
                             {"replicates", replicates},
                             {"output", output}},
                        seed, std::nullopt)
                       .dump(2) +
                   "\n");
    std::cout << "wrote " << output << ".csv, " << output << ".json\n";
    return kExitOk;
}

int cmd_calibrate(const std::vector<std::size_t>& ns,
                  const std::vector<double>& levels, std::size_t replicates,
                  std::uint64_t seed, const std::string& output) {
    json entries = json::object();
    for (std::size_t n : ns)
        for (double level : levels)
            entries[calibration_key(n, level)] = rt::calibrate(n, level, replicates, seed);
    json out{{"entries", entries},
             {"provenance",
              {{"replicates", replicates}, {"seed", seed}, {"version", kVersion}}}};
    write_text(output, out.dump(2) + "\n");
    write_text(output + ".manifest.json",
               manifest("calibrate",
                        json{{"n", ns}, {"levels", levels},
                             {"replicates", replicates}, {"output", output}},
                        seed, std::nullopt)
                       .dump(2) +
                   "\n");
    std::cout << "wrote " << output << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-threshold selection of non-zero-mean observations"};
    app.require_subcommand(1);

    // test
    std::string t_input, t_null = "gaussian", t_calib;
    double t_level = 0.05;
    std::string column_name;
    auto* test = app.add_subcommand("test", "Global-null test (D_n statistic)");
    test->add_option("--input", t_input, "score file, one value per line")->required();
    test->add_option("--null", t_null, "null model (gaussian, gaussian:SIGMA, exp:RATE)");
    test->add_option("--level", t_level, "test level in (0,1)");
    test->add_option("--calibration", t_calib, "calibration table JSON");
    test->add_option("--column", column_name, "CSV column name");

    // threshold
    std::string h_input, h_null = "gaussian", h_variant, h_mode = "fixed";
    std::string h_out, h_eta;
    std::size_t h_window = 0;
    auto* thresh = app.add_subcommand("threshold", "Random-threshold selection");
    thresh->add_option("--input", h_input, "score file")->required();
    thresh->add_option("--null", h_null, "null model (known variants)");
    thresh->add_option("--variant", h_variant, "fixed | varying | unknown-sigma")
        ->required();
    thresh->add_option("--window", h_window, "K_n (fixed) or kappa_n (varying)")
        ->required();
    thresh->add_option("--window-mode", h_mode,
                       "window mode for unknown-sigma (fixed | varying)");
    thresh->add_option("--out", h_out, "write selected indices (0-based)");
    thresh->add_option("--eta-out", h_eta, "write eta curve CSV");
    thresh->add_option("--column", column_name, "CSV column name");

    // simulate
    std::string s_preset, s_spec, s_methods, s_output;
    std::size_t s_reps = 20;
    std::uint64_t s_seed = 0;
    auto* sim = app.add_subcommand("simulate", "Risk-ratio comparison tables");
    sim->add_option("--preset", s_preset, "table1 | table2-top | table2-bottom");
    sim->add_option("--spec", s_spec, "scenario spec JSON file");
    sim->add_option("--methods", s_methods,
                    "override method list, e.g. fixed-rt:5000,bh:0.05,oracle");
    sim->add_option("--replicates", s_reps, "replicates per scenario");
    sim->add_option("--seed", s_seed, "base seed");
    sim->add_option("--output", s_output, "output path prefix")->required();

    // calibrate
    std::vector<std::size_t> c_ns;
    std::vector<double> c_levels;
    std::size_t c_reps = 5000;
    std::uint64_t c_seed = 0;
    std::string c_output;
    auto* cal = app.add_subcommand("calibrate", "Monte Carlo critical values");
    cal->add_option("--n", c_ns, "sample sizes")->required();
    cal->add_option("--level", c_levels, "levels")->required();
    cal->add_option("--replicates", c_reps, "Monte Carlo replicates (>= 1000)");
    cal->add_option("--seed", c_seed, "seed");
    cal->add_option("--output", c_output, "calibration table file")->required();

    try {
        app.parse(argc, argv);
        std::optional<std::string> column =
            column_name.empty() ? std::nullopt : std::optional(column_name);
        if (test->parsed())
            return cmd_test(t_input, t_null, t_level, t_calib, column);
        if (thresh->parsed())
            return cmd_threshold(h_input, h_null, h_variant, h_window, h_mode,
                                 h_out, h_eta, column);
        if (sim->parsed())
            return cmd_simulate(s_preset, s_spec, s_methods, s_reps, s_seed,
                                s_output);
        if (cal->parsed())
            return cmd_calibrate(c_ns, c_levels, c_reps, c_seed, c_output);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
