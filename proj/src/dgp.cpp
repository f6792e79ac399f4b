#include "heterour/dgp.hpp"

#include "heterour/mstats.hpp"
#include "heterour/parallel.hpp"
#include "heterour/rng.hpp"

#include <atomic>
#include <cmath>

namespace heterour {

void DgpSpec::validate() const {
    if (!(std::fabs(theta) < 1.0)) {
        throw InvalidInput("theta must satisfy |theta| < 1");
    }
    if (T < 25) {
        throw InvalidInput("T must be at least 25");
    }
    if (!(sigma0 > 0.0) || !(sigma1 > 0.0)) {
        throw InvalidInput("sigma0 and sigma1 must be positive");
    }
    if (c < 0.0) {
        throw InvalidInput("c must be nonnegative");
    }
    if (!std::isfinite(phi)) {
        throw InvalidInput("phi must be finite");
    }
}

std::vector<double> volatility_profile(VolCase vol_case, double sigma0, double sigma1, int T) {
    if (T < 1 || !(sigma0 > 0.0) || !(sigma1 > 0.0)) {
        throw InvalidInput("invalid volatility profile parameters");
    }
    std::vector<double> sigma(static_cast<std::size_t>(T));
    const double jump = sigma1 - sigma0;
    for (int t = 1; t <= T; ++t) {
        const double tau = static_cast<double>(t) / static_cast<double>(T);
        double v = sigma0;
        switch (vol_case) {
            case VolCase::Constant:
                break;
            case VolCase::OneShift:
                v += tau > 0.5 ? jump : 0.0;
                break;
            case VolCase::TwoShifts:
                v += (tau > 0.3 && tau < 0.7) ? jump : 0.0;
                break;
            case VolCase::Smooth:
                v += jump * (1.0 - std::exp(-15.0 * (tau - 0.5) * (tau - 0.5)));
                break;
        }
        sigma[static_cast<std::size_t>(t - 1)] = v;
    }
    return sigma;
}

namespace {

double draw_innovation(Rng& rng, Innovation innovation) {
    switch (innovation) {
        case Innovation::Normal: return rng.normal();
        case Innovation::StudentT3: return rng.student_t3();
        case Innovation::DoubleExp: return rng.laplace();
    }
    return 0.0;
}

}  // namespace

TimeSeries simulate_series(const DgpSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);

    double eps = 0.0;
    double eta_prev = 0.0;
    auto step = [&] {
        const double eta = draw_innovation(rng, spec.innovation);
        eps = spec.theta * eps + spec.phi * eta_prev + eta;
        eta_prev = eta;
        return eps;
    };
    for (int i = 0; i < 100; ++i) {
        (void)step();
    }

    const std::vector<double> sigma =
        volatility_profile(spec.vol_case, spec.sigma0, spec.sigma1, spec.T);
    const double gamma0 = std::exp(-spec.c / static_cast<double>(spec.T));

    std::vector<double> y(static_cast<std::size_t>(spec.T));
    double level = 0.0;
    for (int t = 1; t <= spec.T; ++t) {
        level = gamma0 * level + sigma[static_cast<std::size_t>(t - 1)] * step();
        y[static_cast<std::size_t>(t - 1)] = level;
    }
    return TimeSeries(std::move(y));
}

McReport mc_size_power(const DgpSpec& spec, const TestConfig& cfg, int n_reps, double alpha,
                       std::uint64_t master_seed) {
    spec.validate();
    cfg.validate();
    if (n_reps < 1) {
        throw InvalidInput("n_reps must be >= 1");
    }

    const bool want_lt = cfg.stat == StatChoice::Lt || cfg.stat == StatChoice::All;
    const bool want_tt = cfg.stat == StatChoice::Tt || cfg.stat == StatChoice::All;
    const bool want_mz = cfg.stat == StatChoice::Mz || cfg.stat == StatChoice::All;

    std::atomic<int> reject_lt{0};
    std::atomic<int> reject_tt{0};
    std::atomic<int> reject_mz{0};

    parallel_for(static_cast<std::size_t>(n_reps), [&](std::size_t j) {
        const std::uint64_t rep_seed = mix_seed(master_seed, j);
        const TimeSeries y = simulate_series(spec, mix_seed(rep_seed, 0));
        TestConfig rep_cfg = cfg;
        rep_cfg.seed = mix_seed(rep_seed, 1);
        const TestResult res = detail::run_abb(y, rep_cfg, want_lt, want_tt, want_mz);
        if (want_lt && res.lt->p_value < alpha) {
            reject_lt.fetch_add(1, std::memory_order_relaxed);
        }
        if (want_tt && res.tt->p_value < alpha) {
            reject_tt.fetch_add(1, std::memory_order_relaxed);
        }
        if (want_mz && res.mz->p_value < alpha) {
            reject_mz.fetch_add(1, std::memory_order_relaxed);
        }
    });

    McReport report;
    report.spec = spec;
    report.config = cfg;
    report.alpha = alpha;
    report.n_reps = n_reps;
    const auto rate = [n_reps](const std::atomic<int>& count) {
        return static_cast<double>(count.load()) / static_cast<double>(n_reps);
    };
    if (want_lt) {
        report.rate_lt = rate(reject_lt);
    }
    if (want_tt) {
        report.rate_tt = rate(reject_tt);
    }
    if (want_mz) {
        report.rate_mz = rate(reject_mz);
    }
    return report;
}

std::string to_string(Innovation innovation) {
    switch (innovation) {
        case Innovation::Normal: return "normal";
        case Innovation::StudentT3: return "t3";
        case Innovation::DoubleExp: return "de";
    }
    return "normal";
}

std::string to_string(VolCase vol_case) {
    switch (vol_case) {
        case VolCase::Constant: return "constant";
        case VolCase::OneShift: return "one_shift";
        case VolCase::TwoShifts: return "two_shifts";
        case VolCase::Smooth: return "smooth";
    }
    return "constant";
}

Innovation innovation_from_string(const std::string& name) {
    if (name == "normal") {
        return Innovation::Normal;
    }
    if (name == "t3") {
        return Innovation::StudentT3;
    }
    if (name == "de") {
        return Innovation::DoubleExp;
    }
    throw InvalidInput("unknown innovation '" + name + "' (normal, t3, de)");
}

VolCase vol_case_from_string(const std::string& name) {
    if (name == "constant") {
        return VolCase::Constant;
    }
    if (name == "one_shift") {
        return VolCase::OneShift;
    }
    if (name == "two_shifts") {
        return VolCase::TwoShifts;
    }
    if (name == "smooth") {
        return VolCase::Smooth;
    }
    throw InvalidInput("unknown volatility case '" + name +
                       "' (constant, one_shift, two_shifts, smooth)");
}

}  // namespace heterour
