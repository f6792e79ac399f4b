// heterour: LAD-based bootstrap unit root tests under unconditional
// heteroskedasticity. Subcommands: test, simulate, mc, volatility.
//
// Exit codes: 0 success, 2 parse/flag failure, 3 statistical precondition
// failure. Errors are reported as JSON on stderr.

#include "heterour/bootstrap.hpp"
#include "heterour/csv.hpp"
#include "heterour/dgp.hpp"
#include "heterour/lad.hpp"
#include "heterour/mstats.hpp"
#include "heterour/report.hpp"
#include "heterour/rng.hpp"
#include "heterour/svg.hpp"
#include "heterour/teststats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using heterour::DeterministicKind;
using heterour::DeterministicSpec;
using heterour::StatChoice;
using heterour::TestConfig;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitParse = 2;
constexpr int kExitStatistical = 3;

void emit_error(const std::string& kind, const std::string& message) {
    ordered_json err;
    err["error"] = kind;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
}

int classify_error(const heterour::Error& e) {
    if (dynamic_cast<const heterour::ParseError*>(&e) != nullptr ||
        dynamic_cast<const heterour::InvalidInput*>(&e) != nullptr) {
        emit_error("parse", e.what());
        return kExitParse;
    }
    emit_error("statistical", e.what());
    return kExitStatistical;
}

DeterministicSpec make_deterministic(const std::string& kind, double c_bar_override) {
    DeterministicSpec spec;
    switch (heterour::deterministic_from_string(kind)) {
        case DeterministicKind::None: spec = DeterministicSpec::none(); break;
        case DeterministicKind::Mean: spec = DeterministicSpec::mean(); break;
        case DeterministicKind::Trend: spec = DeterministicSpec::trend(); break;
    }
    if (c_bar_override > 0.0) {
        spec.c_bar = c_bar_override;
    }
    return spec;
}

StatChoice stat_from_string(const std::string& name) {
    if (name == "lt") {
        return StatChoice::Lt;
    }
    if (name == "tt") {
        return StatChoice::Tt;
    }
    if (name == "mz") {
        return StatChoice::Mz;
    }
    if (name == "all") {
        return StatChoice::All;
    }
    throw heterour::InvalidInput("unknown statistic '" + name + "' (lt, tt, mz, all)");
}

heterour::KernelSpec kernel_from_string(const std::string& name) {
    if (name == "gaussian") {
        return {heterour::KernelKind::Gaussian};
    }
    if (name == "epanechnikov") {
        return {heterour::KernelKind::Epanechnikov};
    }
    if (name == "uniform") {
        return {heterour::KernelKind::Uniform};
    }
    throw heterour::InvalidInput("unknown kernel '" + name +
                                 "' (gaussian, epanechnikov, uniform)");
}

// "auto" or a number.
std::optional<double> parse_bandwidth(const std::string& raw) {
    if (raw == "auto") {
        return std::nullopt;
    }
    try {
        return std::stod(raw);
    } catch (...) {
        throw heterour::InvalidInput("--bandwidth must be 'auto' or a number in (0, 1]");
    }
}

std::optional<int> parse_block(const std::string& raw) {
    if (raw == "auto") {
        return std::nullopt;
    }
    try {
        return std::stoi(raw);
    } catch (...) {
        throw heterour::InvalidInput("--block must be 'auto' or a positive integer");
    }
}

struct TestFlags {
    std::string input;
    std::string deterministic = "none";
    std::string stat = "all";
    int B = 499;
    double alpha = 0.05;
    std::string bandwidth = "auto";
    std::string block = "auto";
    std::string kernel = "gaussian";
    std::uint64_t seed = 0;
    int lag_p = 0;
    double c_bar = 0.0;
    std::string emit_volatility;
    std::string emit_svg;
    std::string out;
};

int run_test(const TestFlags& flags) {
    const heterour::TimeSeries series = heterour::read_series_csv(flags.input);

    TestConfig cfg;
    cfg.deterministic = make_deterministic(flags.deterministic, flags.c_bar);
    cfg.stat = stat_from_string(flags.stat);
    cfg.B = flags.B;
    cfg.alpha = flags.alpha;
    cfg.bandwidth = parse_bandwidth(flags.bandwidth);
    cfg.block = parse_block(flags.block);
    cfg.kernel = kernel_from_string(flags.kernel);
    cfg.seed = flags.seed;
    cfg.lag_p = flags.lag_p;

    const heterour::TestResult result = heterour::abb_test(series, cfg);
    const std::string json = heterour::test_result_to_json(result);
    if (flags.out.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(flags.out);
        if (!out) {
            throw heterour::ParseError("cannot write '" + flags.out + "'");
        }
        out << json;
    }

    if (!flags.emit_volatility.empty() || !flags.emit_svg.empty()) {
        // Recompute the estimated path for export (cheap relative to the test).
        const std::size_t lag_start =
            cfg.deterministic.kind == DeterministicKind::None ? 1 : 2;
        const auto adjusted = heterour::gls_adjust(series, cfg.deterministic).adjusted;
        const auto fit = heterour::lad_fit(adjusted, lag_start);
        std::vector<double> abs_resid(fit.residuals.size());
        for (std::size_t i = 0; i < abs_resid.size(); ++i) {
            abs_resid[i] = std::fabs(fit.residuals[i]);
        }
        const double h = result.h_used > 0.0
                             ? result.h_used
                             : heterour::cv_bandwidth(abs_resid, cfg.kernel,
                                                      heterour::default_bandwidth_grid(
                                                          abs_resid.size()));
        const auto vol = heterour::estimate_volatility(abs_resid, h, cfg.kernel);
        if (!flags.emit_volatility.empty()) {
            heterour::write_sigma_csv(flags.emit_volatility, vol.sigma_hat, lag_start);
        }
        if (!flags.emit_svg.empty()) {
            heterour::write_line_svg(flags.emit_svg, vol.sigma_hat,
                                     "Nonparametric volatility estimate");
        }
    }
    return 0;
}

struct SimulateFlags {
    double c = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    std::string innovation = "normal";
    std::string vol = "constant";
    double sigma0 = 1.0;
    double sigma1 = 1.0;
    int T = 100;
    std::uint64_t seed = 0;
    std::string preset;
    std::string out;
};

int run_simulate(const SimulateFlags& flags) {
    heterour::DgpSpec spec;
    spec.c = flags.c;
    spec.theta = flags.theta;
    spec.phi = flags.phi;
    if (!flags.preset.empty()) {
        if (flags.preset == "paper-ma1") {
            spec.theta = 0.5;
            spec.phi = 0.0;
        } else if (flags.preset == "paper-ar1") {
            spec.theta = 0.0;
            spec.phi = 0.5;
        } else {
            throw heterour::InvalidInput("unknown preset '" + flags.preset +
                                         "' (paper-ma1, paper-ar1)");
        }
    }
    spec.innovation = heterour::innovation_from_string(flags.innovation);
    spec.vol_case = heterour::vol_case_from_string(flags.vol);
    spec.sigma0 = flags.sigma0;
    spec.sigma1 = flags.sigma1;
    spec.T = flags.T;

    const heterour::TimeSeries series = heterour::simulate_series(spec, flags.seed);
    heterour::write_series_csv(flags.out, series.span());
    return 0;
}

// ---- mc subcommand -------------------------------------------------------

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct McCell {
    heterour::DgpSpec dgp;
    heterour::TestConfig cfg;
    int n_reps;
    double alpha;
    std::uint64_t seed;

    [[nodiscard]] std::string key() const {
        std::string s;
        s += heterour::to_string(dgp.vol_case) + "|" + heterour::format_double(dgp.sigma0) +
             "|" + heterour::format_double(dgp.sigma1) + "|" +
             heterour::to_string(dgp.innovation) + "|" + std::to_string(dgp.T) + "|" +
             heterour::format_double(dgp.c) + "|" + heterour::format_double(dgp.theta) + "|" +
             heterour::format_double(dgp.phi) + "|";
        s += heterour::to_string(cfg.deterministic.kind) + "|" +
             heterour::format_double(cfg.deterministic.c_bar) + "|" + std::to_string(cfg.B) +
             "|" + (cfg.bandwidth ? heterour::format_double(*cfg.bandwidth) : "auto") + "|" +
             (cfg.block ? std::to_string(*cfg.block) : "auto") + "|" + cfg.kernel.name() +
             "|" + std::to_string(cfg.lag_p) + "|";
        s += std::to_string(n_reps) + "|" + heterour::format_double(alpha) + "|" +
             std::to_string(seed);
        return s;
    }
};

int run_mc(const std::string& spec_path, const std::string& out_path,
           std::string cache_dir) {
    std::ifstream in(spec_path);
    if (!in) {
        throw heterour::ParseError("cannot open '" + spec_path + "'");
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw heterour::ParseError("'" + spec_path + "': " + e.what());
    }

    const int n_reps = doc.value("n_reps", 100);
    const double alpha = doc.value("alpha", 0.05);
    const std::uint64_t master_seed = doc.value("seed", 0ULL);

    heterour::DgpSpec base;
    if (doc.contains("dgp")) {
        const auto& d = doc["dgp"];
        base.theta = d.value("theta", 0.0);
        base.phi = d.value("phi", 0.0);
        base.sigma0 = d.value("sigma0", 1.0);
    }

    heterour::TestConfig cfg;
    std::string stat_name = "all";
    if (doc.contains("test")) {
        const auto& t = doc["test"];
        cfg.deterministic = make_deterministic(t.value("deterministic", std::string("none")),
                                               t.value("c_bar", 0.0));
        stat_name = t.value("stat", std::string("all"));
        cfg.stat = stat_from_string(stat_name);
        cfg.B = t.value("B", 499);
        cfg.kernel = kernel_from_string(t.value("kernel", std::string("gaussian")));
        cfg.lag_p = t.value("lag_p", 0);
        if (t.contains("bandwidth") && t["bandwidth"].is_number()) {
            cfg.bandwidth = t["bandwidth"].get<double>();
        }
        if (t.contains("block") && t["block"].is_number_integer()) {
            cfg.block = t["block"].get<int>();
        }
    }
    cfg.alpha = alpha;

    const auto grid = doc.value("grid", ordered_json::object());
    const bool have_grid = !grid.empty();
    auto list_of = [&](const char* key, ordered_json fallback) {
        if (!have_grid) {
            return ordered_json::array();  // empty grid: no cells
        }
        return grid.contains(key) ? grid[key] : fallback;
    };
    const auto vols = list_of("vol_case", ordered_json::array({"constant"}));
    const auto sigma1s = list_of("sigma1", ordered_json::array({base.sigma0}));
    const auto innovations = list_of("innovation", ordered_json::array({"normal"}));
    const auto Ts = list_of("T", ordered_json::array({100}));
    const auto cs = list_of("c", ordered_json::array({0.0}));

    if (cache_dir.empty()) {
        cache_dir = out_path + ".cache";
    }
    std::filesystem::create_directories(cache_dir);

    std::ofstream out(out_path);
    if (!out) {
        throw heterour::ParseError("cannot write '" + out_path + "'");
    }
    out << "vol_case,sigma1,innovation,T,c,stat,rate\n";

    for (const auto& vc : vols) {
        for (const auto& s1 : sigma1s) {
            for (const auto& innov : innovations) {
                for (const auto& T : Ts) {
                    for (const auto& c : cs) {
                        McCell cell;
                        cell.dgp = base;
                        cell.dgp.vol_case =
                            heterour::vol_case_from_string(vc.get<std::string>());
                        cell.dgp.sigma1 = s1.get<double>();
                        cell.dgp.innovation =
                            heterour::innovation_from_string(innov.get<std::string>());
                        cell.dgp.T = T.get<int>();
                        cell.dgp.c = c.get<double>();
                        cell.cfg = cfg;
                        cell.n_reps = n_reps;
                        cell.alpha = alpha;
                        cell.seed = master_seed;

                        char hex[17];
                        std::snprintf(hex, sizeof(hex), "%016llx",
                                      static_cast<unsigned long long>(fnv1a64(cell.key())));
                        const std::string cache_file =
                            cache_dir + "/" + hex + ".json";

                        ordered_json rates;
                        std::ifstream cached(cache_file);
                        if (cached) {
                            rates = ordered_json::parse(cached);
                            std::cerr << "cell " << hex << " cached\n";
                        } else {
                            const auto report = heterour::mc_size_power(
                                cell.dgp, cell.cfg, n_reps, alpha, master_seed);
                            if (report.rate_lt) {
                                rates["lt"] = *report.rate_lt;
                            }
                            if (report.rate_tt) {
                                rates["tt"] = *report.rate_tt;
                            }
                            if (report.rate_mz) {
                                rates["mz"] = *report.rate_mz;
                            }
                            std::ofstream cache_out(cache_file);
                            cache_out << rates.dump() << "\n";
                            std::cerr << "cell " << hex << " computed\n";
                        }

                        for (const auto& [stat, rate] : rates.items()) {
                            out << heterour::to_string(cell.dgp.vol_case) << ','
                                << heterour::format_double(cell.dgp.sigma1) << ','
                                << heterour::to_string(cell.dgp.innovation) << ','
                                << cell.dgp.T << ',' << heterour::format_double(cell.dgp.c)
                                << ',' << stat << ','
                                << heterour::format_double(rate.get<double>()) << '\n';
                        }
                    }
                }
            }
        }
    }
    return 0;
}

struct VolatilityFlags {
    std::string input;
    std::string deterministic = "none";
    std::string kernel = "gaussian";
    std::string bandwidth = "auto";
    double c_bar = 0.0;
    std::string out;
    std::string svg;
};

int run_volatility(const VolatilityFlags& flags) {
    const heterour::TimeSeries series = heterour::read_series_csv(flags.input);
    const DeterministicSpec det = make_deterministic(flags.deterministic, flags.c_bar);
    const std::size_t lag_start = det.kind == DeterministicKind::None ? 1 : 2;

    const auto adjusted = heterour::gls_adjust(series, det).adjusted;
    const auto fit = heterour::lad_fit(adjusted, lag_start);
    std::vector<double> abs_resid(fit.residuals.size());
    for (std::size_t i = 0; i < abs_resid.size(); ++i) {
        abs_resid[i] = std::fabs(fit.residuals[i]);
    }
    const auto kernel = kernel_from_string(flags.kernel);
    const auto bw = parse_bandwidth(flags.bandwidth);
    const double h =
        bw ? *bw
           : heterour::cv_bandwidth(abs_resid, kernel,
                                    heterour::default_bandwidth_grid(abs_resid.size()));
    const auto vol = heterour::estimate_volatility(abs_resid, h, kernel);

    heterour::write_sigma_csv(flags.out, vol.sigma_hat, lag_start);
    if (!flags.svg.empty()) {
        heterour::write_line_svg(flags.svg, vol.sigma_hat,
                                 "Nonparametric volatility estimate");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LAD-based bootstrap unit root tests under unconditional "
                 "heteroskedasticity"};
    app.require_subcommand(1);

    TestFlags test_flags;
    auto* test = app.add_subcommand("test", "Run the bootstrap unit root test on a CSV series");
    test->add_option("--input", test_flags.input, "Input CSV")->required();
    test->add_option("--deterministic", test_flags.deterministic, "none|mean|trend");
    test->add_option("--stat", test_flags.stat, "lt|tt|mz|all");
    test->add_option("--B", test_flags.B, "Bootstrap replications");
    test->add_option("--alpha", test_flags.alpha, "Significance level");
    test->add_option("--bandwidth", test_flags.bandwidth, "auto or a value in (0,1]");
    test->add_option("--block", test_flags.block, "auto or a positive integer");
    test->add_option("--kernel", test_flags.kernel, "gaussian|epanechnikov|uniform");
    test->add_option("--seed", test_flags.seed, "RNG seed");
    test->add_option("--lag-p", test_flags.lag_p, "Lag order for the MZ statistic");
    test->add_option("--c-bar", test_flags.c_bar, "Override the quasi-differencing constant");
    test->add_option("--emit-volatility", test_flags.emit_volatility,
                     "Write the estimated volatility path as CSV");
    test->add_option("--emit-svg", test_flags.emit_svg, "Write a volatility line plot");
    test->add_option("--out", test_flags.out, "Write the JSON result here instead of stdout");

    SimulateFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Simulate a series from the built-in designs");
    sim->add_option("--c", sim_flags.c, "Local-to-unity parameter");
    sim->add_option("--theta", sim_flags.theta, "AR coefficient of the error");
    sim->add_option("--phi", sim_flags.phi, "MA coefficient of the error");
    sim->add_option("--innov", sim_flags.innovation, "normal|t3|de");
    sim->add_option("--vol", sim_flags.vol, "constant|one_shift|two_shifts|smooth");
    sim->add_option("--sigma0", sim_flags.sigma0, "Baseline volatility");
    sim->add_option("--sigma1", sim_flags.sigma1, "Shifted volatility");
    sim->add_option("--T", sim_flags.T, "Sample size");
    sim->add_option("--seed", sim_flags.seed, "RNG seed");
    sim->add_option("--preset", sim_flags.preset, "paper-ma1|paper-ar1 error presets");
    sim->add_option("--out", sim_flags.out, "Output CSV")->required();

    std::string mc_spec;
    std::string mc_out;
    std::string mc_cache;
    auto* mc = app.add_subcommand("mc", "Run a Monte Carlo size/power experiment grid");
    mc->add_option("spec", mc_spec, "Experiment spec (JSON)")->required();
    mc->add_option("--out", mc_out, "Output CSV of rejection rates")->required();
    mc->add_option("--cache-dir", mc_cache, "Per-cell cache directory");

    VolatilityFlags vol_flags;
    auto* vol = app.add_subcommand("volatility", "Estimate and export the volatility path");
    vol->add_option("--input", vol_flags.input, "Input CSV")->required();
    vol->add_option("--deterministic", vol_flags.deterministic, "none|mean|trend");
    vol->add_option("--kernel", vol_flags.kernel, "gaussian|epanechnikov|uniform");
    vol->add_option("--bandwidth", vol_flags.bandwidth, "auto or a value in (0,1]");
    vol->add_option("--c-bar", vol_flags.c_bar, "Override the quasi-differencing constant");
    vol->add_option("--out", vol_flags.out, "Output CSV (t,sigma_hat)")->required();
    vol->add_option("--svg", vol_flags.svg, "Optional SVG line plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        emit_error("flags", e.what());
        return kExitParse;
    }

    try {
        if (test->parsed()) {
            return run_test(test_flags);
        }
        if (sim->parsed()) {
            return run_simulate(sim_flags);
        }
        if (mc->parsed()) {
            return run_mc(mc_spec, mc_out, mc_cache);
        }
        if (vol->parsed()) {
            return run_volatility(vol_flags);
        }
    } catch (const heterour::Error& e) {
        return classify_error(e);
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return kExitStatistical;
    }
    return 0;
}
