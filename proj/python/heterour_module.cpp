// Python bindings for the heterour core.

#include "heterour/bootstrap.hpp"
#include "heterour/dgp.hpp"
#include "heterour/gls.hpp"
#include "heterour/lad.hpp"
#include "heterour/mstats.hpp"
#include "heterour/report.hpp"
#include "heterour/teststats.hpp"
#include "heterour/volatility.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

heterour::KernelSpec kernel_of(const std::string& name) {
    if (name == "gaussian") {
        return {heterour::KernelKind::Gaussian};
    }
    if (name == "epanechnikov") {
        return {heterour::KernelKind::Epanechnikov};
    }
    if (name == "uniform") {
        return {heterour::KernelKind::Uniform};
    }
    throw heterour::InvalidInput("unknown kernel '" + name + "'");
}

heterour::DeterministicSpec deterministic_of(const std::string& name, double c_bar) {
    heterour::DeterministicSpec spec;
    switch (heterour::deterministic_from_string(name)) {
        case heterour::DeterministicKind::None:
            spec = heterour::DeterministicSpec::none();
            break;
        case heterour::DeterministicKind::Mean:
            spec = heterour::DeterministicSpec::mean();
            break;
        case heterour::DeterministicKind::Trend:
            spec = heterour::DeterministicSpec::trend();
            break;
    }
    if (c_bar > 0.0) {
        spec.c_bar = c_bar;
    }
    return spec;
}

heterour::StatChoice stat_of(const std::string& name) {
    if (name == "lt") {
        return heterour::StatChoice::Lt;
    }
    if (name == "tt") {
        return heterour::StatChoice::Tt;
    }
    if (name == "mz") {
        return heterour::StatChoice::Mz;
    }
    if (name == "all") {
        return heterour::StatChoice::All;
    }
    throw heterour::InvalidInput("unknown statistic '" + name + "'");
}

py::dict result_to_dict(const heterour::TestResult& result) {
    py::dict statistic;
    py::dict p_value;
    py::dict draws;
    const auto add = [&](const char* key, const std::optional<heterour::StatOutcome>& outcome) {
        if (outcome) {
            statistic[key] = outcome->observed;
            p_value[key] = outcome->p_value;
            draws[key] = outcome->draws.stat_draws;
        }
    };
    add("lt", result.lt);
    add("tt", result.tt);
    add("mz", result.mz);

    py::dict out;
    out["statistic"] = statistic;
    out["p_value"] = p_value;
    out["draws"] = draws;
    out["b_used"] = result.b_used;
    out["h_used"] = result.h_used;
    out["B"] = result.B;
    out["gamma_hat"] = result.gamma_hat;
    out["deterministic"] = heterour::to_string(result.deterministic.kind);
    out["c_bar"] = result.deterministic.c_bar;
    out["seed"] = result.seed;
    return out;
}

heterour::TestConfig config_of(const std::string& deterministic, const std::string& stat,
                               int B, double alpha, std::optional<double> bandwidth,
                               std::optional<int> block, const std::string& kernel,
                               std::uint64_t seed, int lag_p, double c_bar) {
    heterour::TestConfig cfg;
    cfg.deterministic = deterministic_of(deterministic, c_bar);
    cfg.stat = stat_of(stat);
    cfg.B = B;
    cfg.alpha = alpha;
    cfg.bandwidth = bandwidth;
    cfg.block = block;
    cfg.kernel = kernel_of(kernel);
    cfg.seed = seed;
    cfg.lag_p = lag_p;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_heterour, m) {
    m.doc() = "LAD-based bootstrap unit root tests under unconditional heteroskedasticity";

    py::register_exception<heterour::Error>(m, "HeterourError");

    m.def(
        "lad_fit",
        [](const std::vector<double>& values, std::size_t lag_start) {
            const auto fit = heterour::lad_fit(heterour::TimeSeries(values), lag_start);
            py::dict out;
            out["gamma_hat"] = fit.gamma_hat;
            out["residuals"] = fit.residuals;
            out["objective"] = fit.objective;
            out["t_range"] = py::make_tuple(fit.t_range.first, fit.t_range.second);
            return out;
        },
        py::arg("values"), py::arg("lag_start") = 1,
        "Exact LAD fit of y_t on y_{t-1} through the origin.");

    m.def(
        "lad_objective",
        [](const std::vector<double>& values, double gamma, std::size_t lag_start) {
            return heterour::lad_objective(heterour::TimeSeries(values), gamma, lag_start);
        },
        py::arg("values"), py::arg("gamma"), py::arg("lag_start") = 1);

    m.def(
        "gls_adjust",
        [](const std::vector<double>& values, const std::string& kind, double c_bar) {
            const auto fit = heterour::gls_adjust(heterour::TimeSeries(values),
                                                  deterministic_of(kind, c_bar));
            py::dict out;
            out["mu_hat"] = fit.mu_hat;
            out["adjusted"] = fit.adjusted.values();
            return out;
        },
        py::arg("values"), py::arg("kind") = "mean", py::arg("c_bar") = 0.0,
        "GLS demeaning/detrending via quasi-differenced OLS.");

    m.def(
        "estimate_volatility",
        [](const std::vector<double>& abs_resid, double h, const std::string& kernel) {
            return heterour::estimate_volatility(abs_resid, h, kernel_of(kernel)).sigma_hat;
        },
        py::arg("abs_resid"), py::arg("h"), py::arg("kernel") = "gaussian");

    m.def(
        "cv_bandwidth",
        [](const std::vector<double>& abs_resid, const std::string& kernel,
           std::optional<std::vector<double>> grid) {
            const auto g =
                grid ? *grid : heterour::default_bandwidth_grid(abs_resid.size());
            return heterour::cv_bandwidth(abs_resid, kernel_of(kernel), g);
        },
        py::arg("abs_resid"), py::arg("kernel") = "gaussian",
        py::arg("grid") = std::nullopt);

    m.def(
        "density_at_zero",
        [](const std::vector<double>& std_resid, std::optional<double> bandwidth) {
            return bandwidth ? heterour::density_at_zero(std_resid, *bandwidth)
                             : heterour::density_at_zero(std_resid);
        },
        py::arg("std_resid"), py::arg("bandwidth") = std::nullopt);

    m.def(
        "unit_root_test",
        [](const std::vector<double>& values, const std::string& deterministic,
           const std::string& stat, int B, double alpha, std::optional<double> bandwidth,
           std::optional<int> block, const std::string& kernel, std::uint64_t seed,
           int lag_p, double c_bar) {
            const auto cfg = config_of(deterministic, stat, B, alpha, bandwidth, block,
                                       kernel, seed, lag_p, c_bar);
            return result_to_dict(heterour::abb_test(heterour::TimeSeries(values), cfg));
        },
        py::arg("values"), py::arg("deterministic") = "none", py::arg("stat") = "all",
        py::arg("B") = 499, py::arg("alpha") = 0.05, py::arg("bandwidth") = std::nullopt,
        py::arg("block") = std::nullopt, py::arg("kernel") = "gaussian", py::arg("seed") = 0,
        py::arg("lag_p") = 0, py::arg("c_bar") = 0.0,
        "Adaptive block bootstrap unit root test; returns statistics, p-values and draws.");

    m.def(
        "m_statistics",
        [](const std::vector<double>& values, int lag_p) {
            const auto s = heterour::m_statistics(heterour::TimeSeries(values), lag_p);
            py::dict out;
            out["mz_alpha"] = s.mz_alpha;
            out["msb"] = s.msb;
            out["mz_t"] = s.mz_t;
            out["s_ar2"] = s.s_ar2;
            out["lag_p"] = s.lag_p;
            return out;
        },
        py::arg("values"), py::arg("lag_p") = 0);

    m.def(
        "volatility_profile",
        [](const std::string& vol_case, double sigma0, double sigma1, int T) {
            return heterour::volatility_profile(heterour::vol_case_from_string(vol_case),
                                                sigma0, sigma1, T);
        },
        py::arg("vol_case"), py::arg("sigma0"), py::arg("sigma1"), py::arg("T"));

    m.def(
        "simulate",
        [](double c, double theta, double phi, const std::string& innovation,
           const std::string& vol_case, double sigma0, double sigma1, int T,
           std::uint64_t seed) {
            heterour::DgpSpec spec;
            spec.c = c;
            spec.theta = theta;
            spec.phi = phi;
            spec.innovation = heterour::innovation_from_string(innovation);
            spec.vol_case = heterour::vol_case_from_string(vol_case);
            spec.sigma0 = sigma0;
            spec.sigma1 = sigma1;
            spec.T = T;
            return heterour::simulate_series(spec, seed).values();
        },
        py::arg("c") = 0.0, py::arg("theta") = 0.0, py::arg("phi") = 0.0,
        py::arg("innovation") = "normal", py::arg("vol_case") = "constant",
        py::arg("sigma0") = 1.0, py::arg("sigma1") = 1.0, py::arg("T") = 100,
        py::arg("seed") = 0);

    m.def(
        "mc_size_power",
        [](double c, double theta, double phi, const std::string& innovation,
           const std::string& vol_case, double sigma0, double sigma1, int T, int n_reps,
           double alpha, std::uint64_t seed, const std::string& deterministic,
           const std::string& stat, int B, std::optional<double> bandwidth,
           std::optional<int> block, const std::string& kernel, int lag_p) {
            heterour::DgpSpec spec;
            spec.c = c;
            spec.theta = theta;
            spec.phi = phi;
            spec.innovation = heterour::innovation_from_string(innovation);
            spec.vol_case = heterour::vol_case_from_string(vol_case);
            spec.sigma0 = sigma0;
            spec.sigma1 = sigma1;
            spec.T = T;
            const auto cfg = config_of(deterministic, stat, B, alpha, bandwidth, block,
                                       kernel, 0, lag_p, 0.0);
            const auto report = heterour::mc_size_power(spec, cfg, n_reps, alpha, seed);
            py::dict out;
            if (report.rate_lt) {
                out["lt"] = *report.rate_lt;
            }
            if (report.rate_tt) {
                out["tt"] = *report.rate_tt;
            }
            if (report.rate_mz) {
                out["mz"] = *report.rate_mz;
            }
            return out;
        },
        py::arg("c") = 0.0, py::arg("theta") = 0.0, py::arg("phi") = 0.0,
        py::arg("innovation") = "normal", py::arg("vol_case") = "constant",
        py::arg("sigma0") = 1.0, py::arg("sigma1") = 1.0, py::arg("T") = 100,
        py::arg("n_reps") = 100, py::arg("alpha") = 0.05, py::arg("seed") = 0,
        py::arg("deterministic") = "none", py::arg("stat") = "all", py::arg("B") = 499,
        py::arg("bandwidth") = std::nullopt, py::arg("block") = std::nullopt,
        py::arg("kernel") = "gaussian", py::arg("lag_p") = 0,
        "Rejection rates of the bootstrap tests over simulated replications.");

#ifdef HETEROUR_VERSION
    m.attr("__version__") = HETEROUR_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
