#include "heterour/teststats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace heterour {

namespace {

double standard_deviation(std::span<const double> x) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

// Linear-interpolation quantile on a sorted copy (R type 7).
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> data) {
    if (data.size() < 8) {
        throw InsufficientLength("need at least 8 values for a density estimate");
    }
    const double sd = standard_deviation(data);

    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

    const double scale = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    if (!(scale > 0.0)) {
        throw ZeroBandwidth("sample has zero spread; all values identical");
    }
    return 0.9 * scale * std::pow(static_cast<double>(data.size()), -0.2);
}

double density_at_zero(std::span<const double> std_resid, double bandwidth) {
    if (!(bandwidth > 0.0)) {
        throw ZeroBandwidth("bandwidth must be positive");
    }
    const double inv_norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double sum = 0.0;
    for (double e : std_resid) {
        const double z = e / bandwidth;
        sum += std::exp(-0.5 * z * z);
    }
    return inv_norm * sum / (static_cast<double>(std_resid.size()) * bandwidth);
}

double density_at_zero(std::span<const double> std_resid) {
    return density_at_zero(std_resid, silverman_bandwidth(std_resid));
}

StatPair compute_stats(const TimeSeries& y, const LadFit& fit,
                       const VolatilityEstimate& sigma_hat) {
    const std::size_t n = fit.residuals.size();
    if (sigma_hat.size() != n) {
        throw LengthMismatch("volatility path must have one entry per residual");
    }
    if (fit.t_range.second != y.size() || fit.n_obs() != n) {
        throw InvalidInput("fit does not match the series");
    }

    // Lagged regressor vector over the fit range, with y_0 := 0 when the
    // regression starts at t = 1.
    const std::size_t lag_start = fit.t_range.first;
    double lag_mean = 0.0;
    for (std::size_t t = lag_start; t <= y.size(); ++t) {
        lag_mean += t >= 2 ? y[t - 2] : 0.0;
    }
    lag_mean /= static_cast<double>(n);
    double centered_ss = 0.0;
    for (std::size_t t = lag_start; t <= y.size(); ++t) {
        const double lag = t >= 2 ? y[t - 2] : 0.0;
        centered_ss += (lag - lag_mean) * (lag - lag_mean);
    }

    std::vector<double> std_resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        std_resid[i] = fit.residuals[i] / sigma_hat.sigma_hat[i];
    }

    StatPair out;
    out.f0_hat = density_at_zero(std_resid);
    out.centered_ss = centered_ss;
    out.l_stat = static_cast<double>(n) * (fit.gamma_hat - 1.0);
    if (centered_ss <= 0.0) {
        out.lagged_degenerate = true;
        out.t_stat = 0.0;
    } else {
        out.t_stat = 2.0 * out.f0_hat * std::sqrt(centered_ss) * (fit.gamma_hat - 1.0);
    }
    return out;
}

}  // namespace heterour
