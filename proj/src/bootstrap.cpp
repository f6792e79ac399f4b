#include "heterour/bootstrap.hpp"

#include "heterour/lad.hpp"
#include "heterour/mstats.hpp"
#include "heterour/parallel.hpp"
#include "heterour/teststats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace heterour {

AbbPlan AbbPlan::make(int n_resid, int block_len_b) {
    if (n_resid < 2) {
        throw InvalidInput("residual pool too short for resampling");
    }
    if (block_len_b < 1 || block_len_b >= n_resid) {
        throw InvalidInput("block length must satisfy 1 <= b < n");
    }
    AbbPlan plan;
    plan.block_len_b = block_len_b;
    plan.n_resid = n_resid;
    plan.k_blocks = (n_resid - 1) / block_len_b;
    plan.index_set_size = 2 * (n_resid - block_len_b);
    return plan;
}

void TestConfig::validate() const {
    if (B < 19) {
        throw InvalidInput("B must be at least 19");
    }
    if (!(alpha > 0.0) || alpha > 0.5) {
        throw InvalidInput("alpha must lie in (0, 0.5]");
    }
    if (bandwidth && (!(*bandwidth > 0.0) || *bandwidth > 1.0)) {
        throw InvalidInput("fixed bandwidth must lie in (0, 1]");
    }
    if (block && *block < 1) {
        throw InvalidInput("fixed block length must be >= 1");
    }
    if (lag_p < 0) {
        throw InvalidInput("lag_p must be >= 0");
    }
}

std::vector<double> standardize_residuals(std::span<const double> resid,
                                          std::span<const double> sigma) {
    if (resid.size() != sigma.size()) {
        throw LengthMismatch("residuals and sigma must have equal length");
    }
    std::vector<double> out(resid.size());
    for (std::size_t i = 0; i < resid.size(); ++i) {
        if (!(sigma[i] > 0.0)) {
            throw InvalidInput("sigma values must be positive");
        }
        out[i] = resid[i] / sigma[i];
    }
    return out;
}

std::vector<int> draw_block_indices(const AbbPlan& plan, Rng& rng) {
    const int n = plan.n_resid;
    const int b = plan.block_len_b;
    const int positive = n - b;  // members 1..n-b, then -n..-1-b
    std::vector<int> indices(static_cast<std::size_t>(plan.k_blocks) + 1);
    for (auto& idx : indices) {
        const auto u = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(plan.index_set_size)));
        idx = u < positive ? u + 1 : -n + (u - positive);
    }
    return indices;
}

std::vector<int> draw_block_indices(const AbbPlan& plan, std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    return draw_block_indices(plan, rng);
}

std::vector<double> build_pseudo_errors(std::span<const double> std_resid,
                                        std::span<const int> indices, const AbbPlan& plan) {
    const int n = plan.n_resid;
    const int b = plan.block_len_b;
    if (std_resid.size() != static_cast<std::size_t>(n)) {
        throw LengthMismatch("residual pool does not match the plan");
    }
    if (indices.size() != static_cast<std::size_t>(plan.k_blocks) + 1) {
        throw LengthMismatch("need k_blocks + 1 indices");
    }
    std::vector<double> eps(static_cast<std::size_t>(n));
    for (int t = 1; t <= n; ++t) {
        const int m = (t - 1) / b;
        const int s = t - m * b - 1;
        const int i = indices[static_cast<std::size_t>(m)];
        const int pool = i > 0 ? i + s : i + s + n + 1;
        if (pool < 1 || pool > n) {
            throw InvalidInput("block index maps outside the residual pool");
        }
        eps[static_cast<std::size_t>(t - 1)] =
            i > 0 ? std_resid[static_cast<std::size_t>(pool - 1)]
                  : -std_resid[static_cast<std::size_t>(pool - 1)];
    }
    return eps;
}

TimeSeries build_pseudo_series(std::span<const double> pseudo_err,
                               std::span<const double> sigma) {
    if (pseudo_err.size() != sigma.size()) {
        throw LengthMismatch("errors and sigma must have equal length");
    }
    std::vector<double> y(pseudo_err.size());
    double level = 0.0;
    for (std::size_t t = 0; t < pseudo_err.size(); ++t) {
        level += sigma[t] * pseudo_err[t];
        y[t] = level;
    }
    return TimeSeries(std::move(y));
}

double mbb_variance(std::span<const double> z, int b) {
    const int n = static_cast<int>(z.size());
    if (b < 1 || b > n) {
        throw InvalidInput("block length must satisfy 1 <= b <= n");
    }
    double mean = 0.0;
    for (double v : z) {
        mean += v;
    }
    mean /= static_cast<double>(n);

    double block_sum = 0.0;
    for (int i = 0; i < b; ++i) {
        block_sum += z[static_cast<std::size_t>(i)];
    }
    const double target = static_cast<double>(b) * mean;
    double acc = (block_sum - target) * (block_sum - target);
    for (int j = 1; j + b <= n; ++j) {
        block_sum += z[static_cast<std::size_t>(j + b - 1)] - z[static_cast<std::size_t>(j - 1)];
        acc += (block_sum - target) * (block_sum - target);
    }
    return acc / (static_cast<double>(b) * static_cast<double>(n - b + 1));
}

namespace {

int hhj_one_pass(std::span<const double> z, int m, int pilot_b) {
    const int n = static_cast<int>(z.size());
    const double psi_full = mbb_variance(z, pilot_b);
    const int b_max = (m + 2) / 3;  // ceil(m/3)

    int best_b = 1;
    double best_crit = 0.0;
    for (int b = 1; b <= b_max; ++b) {
        double crit = 0.0;
        for (int i = 0; i < n - m; ++i) {
            const double psi = mbb_variance(z.subspan(static_cast<std::size_t>(i),
                                                      static_cast<std::size_t>(m)),
                                            b);
            crit += (psi - psi_full) * (psi - psi_full);
        }
        if (b == 1 || crit < best_crit) {
            best_b = b;
            best_crit = crit;
        }
    }

    const double factor = std::cbrt(static_cast<double>(n) / static_cast<double>(m));
    const auto b_opt = static_cast<int>(std::lround(factor * static_cast<double>(best_b)));
    return std::clamp(b_opt, 1, std::max(1, n / 3));
}

}  // namespace

int hhj_block_length(std::span<const double> std_resid, int m, int pilot_b, int max_iter) {
    const int n = static_cast<int>(std_resid.size());
    if (m < 2 || m >= n) {
        throw InvalidSubsampleLength("subsample length m must satisfy 2 <= m < n");
    }
    if (pilot_b < 1 || pilot_b >= m) {
        throw InvalidSubsampleLength("pilot block length must satisfy 1 <= pilot < m");
    }
    if (max_iter < 1) {
        throw InvalidInput("max_iter must be >= 1");
    }

    int pilot = pilot_b;
    int chosen = pilot_b;
    for (int iter = 0; iter < max_iter; ++iter) {
        chosen = hhj_one_pass(std_resid, m, pilot);
        if (chosen == pilot) {
            break;
        }
        pilot = chosen;
    }
    return chosen;
}

int auto_block_length(std::span<const double> std_resid) {
    const int n = static_cast<int>(std_resid.size());
    int m = 2 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    m = std::max(m, 16);
    m = std::min(m, n / 4);
    m = std::clamp(m, 2, n - 1);
    int pilot = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
    pilot = std::clamp(pilot, 1, m - 1);
    return hhj_block_length(std_resid, m, pilot, 3);
}

namespace detail {

namespace {

// Volatility path sliced to a pseudo regression that starts at lag_start:
// pseudo residual i (0-based) corresponds to pool time i + lag_start.
VolatilityEstimate slice_sigma(const VolatilityEstimate& vol, std::size_t lag_start) {
    if (lag_start == 1) {
        return vol;
    }
    VolatilityEstimate out;
    out.bandwidth_h = vol.bandwidth_h;
    out.kernel = vol.kernel;
    out.sigma_hat.assign(vol.sigma_hat.begin() + static_cast<std::ptrdiff_t>(lag_start - 1),
                         vol.sigma_hat.end());
    return out;
}

struct StatTriple {
    double lt = 0.0;
    double tt = 0.0;
    double mz = 0.0;
};

StatTriple evaluate_statistics(const TimeSeries& series, std::size_t lag_start,
                               const VolatilityEstimate& sigma_for_tt, int lag_p,
                               bool want_lt, bool want_tt, bool want_mz,
                               double* gamma_out = nullptr) {
    StatTriple out;
    if (want_lt || want_tt) {
        const LadFit fit = lad_fit(series, lag_start);
        if (gamma_out != nullptr) {
            *gamma_out = fit.gamma_hat;
        }
        if (want_tt) {
            const StatPair stats = compute_stats(series, fit, sigma_for_tt);
            out.lt = stats.l_stat;
            out.tt = stats.t_stat;
        } else {
            out.lt = static_cast<double>(fit.n_obs()) * (fit.gamma_hat - 1.0);
        }
    }
    if (want_mz) {
        out.mz = m_statistics(series, lag_p).mz_alpha;
    }
    return out;
}

double left_tail_p(std::span<const double> draws, double observed) {
    std::size_t count = 0;
    for (double d : draws) {
        count += d < observed ? 1 : 0;
    }
    return static_cast<double>(count) / static_cast<double>(draws.size());
}

}  // namespace

TestResult run_abb(const TimeSeries& y, const TestConfig& cfg, bool want_lt, bool want_tt,
                   bool want_mz) {
    cfg.validate();
    y.require_statistical_length();

    const DeterministicSpec& det = cfg.deterministic;
    const std::size_t lag_start = det.kind == DeterministicKind::None ? 1 : 2;

    const GlsFit gls = gls_adjust(y, det);
    const TimeSeries& adjusted = gls.adjusted;

    const LadFit fit = lad_fit(adjusted, lag_start);
    const std::size_t n = fit.residuals.size();
    if (n < kMinSeriesLength) {
        throw InsufficientLength("adjusted series leaves too few residuals");
    }

    // Volatility path: supplied (infeasible variant) or estimated from |u|.
    VolatilityEstimate vol;
    double h_used = 0.0;
    if (!cfg.known_sigma.empty()) {
        if (cfg.known_sigma.size() != y.size()) {
            throw LengthMismatch("known_sigma must have one value per observation");
        }
        vol.kernel = cfg.kernel;
        vol.bandwidth_h = 0.0;
        vol.sigma_hat.assign(cfg.known_sigma.begin() + static_cast<std::ptrdiff_t>(lag_start - 1),
                             cfg.known_sigma.end());
        for (double s : vol.sigma_hat) {
            if (!(s > 0.0)) {
                throw InvalidInput("known_sigma values must be positive");
            }
        }
    } else {
        std::vector<double> abs_resid(n);
        for (std::size_t i = 0; i < n; ++i) {
            abs_resid[i] = std::fabs(fit.residuals[i]);
        }
        h_used = cfg.bandwidth
                     ? *cfg.bandwidth
                     : cv_bandwidth(abs_resid, cfg.kernel, default_bandwidth_grid(n));
        vol = estimate_volatility(abs_resid, h_used, cfg.kernel);
    }

    const std::vector<double> pool = standardize_residuals(fit.residuals, vol.sigma_hat);

    const int b_used = cfg.block ? *cfg.block : auto_block_length(pool);
    const AbbPlan plan = AbbPlan::make(static_cast<int>(n), b_used);

    // Observed statistics on the adjusted series.
    double gamma_hat = fit.gamma_hat;
    const StatTriple observed =
        evaluate_statistics(adjusted, lag_start, vol, cfg.lag_p, want_lt, want_tt, want_mz,
                            &gamma_hat);

    const VolatilityEstimate pseudo_sigma = slice_sigma(vol, lag_start);

    const auto B = static_cast<std::size_t>(cfg.B);
    std::vector<double> draws_lt(want_lt ? B : 0);
    std::vector<double> draws_tt(want_tt ? B : 0);
    std::vector<double> draws_mz(want_mz ? B : 0);

    parallel_for(B, [&](std::size_t j) {
        Rng rng(mix_seed(cfg.seed, j));
        const std::vector<int> indices = draw_block_indices(plan, rng);
        const std::vector<double> eps = build_pseudo_errors(pool, indices, plan);
        TimeSeries pseudo = build_pseudo_series(eps, vol.sigma_hat);
        if (det.kind != DeterministicKind::None) {
            pseudo = gls_adjust(pseudo, det).adjusted;
        }
        const StatTriple stats = evaluate_statistics(pseudo, lag_start, pseudo_sigma, cfg.lag_p,
                                                     want_lt, want_tt, want_mz);
        if (want_lt) {
            draws_lt[j] = stats.lt;
        }
        if (want_tt) {
            draws_tt[j] = stats.tt;
        }
        if (want_mz) {
            draws_mz[j] = stats.mz;
        }
    });

    TestResult result;
    result.deterministic = det;
    result.seed = cfg.seed;
    result.B = cfg.B;
    result.b_used = b_used;
    result.h_used = h_used;
    result.gamma_hat = gamma_hat;

    auto pack = [&](double obs, std::vector<double>&& draws) {
        StatOutcome outcome;
        outcome.observed = obs;
        outcome.p_value = left_tail_p(draws, obs);
        outcome.draws = BootstrapDraws{std::move(draws), b_used, h_used, cfg.seed};
        return outcome;
    };
    if (want_lt) {
        result.lt = pack(observed.lt, std::move(draws_lt));
    }
    if (want_tt) {
        result.tt = pack(observed.tt, std::move(draws_tt));
    }
    if (want_mz) {
        result.mz = pack(observed.mz, std::move(draws_mz));
    }
    return result;
}

}  // namespace detail

TestResult abb_test(const TimeSeries& y, const TestConfig& cfg) {
    const bool want_lt = cfg.stat == StatChoice::Lt || cfg.stat == StatChoice::All;
    const bool want_tt = cfg.stat == StatChoice::Tt || cfg.stat == StatChoice::All;
    const bool want_mz = cfg.stat == StatChoice::Mz || cfg.stat == StatChoice::All;
    return detail::run_abb(y, cfg, want_lt, want_tt, want_mz);
}

}  // namespace heterour
