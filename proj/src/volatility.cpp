#include "heterour/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heterour {

double KernelSpec::operator()(double x) const noexcept {
    switch (kind) {
        case KernelKind::Gaussian:
            return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        case KernelKind::Epanechnikov:
            return std::fabs(x) < 1.0 ? 0.75 * (1.0 - x * x) : 0.0;
        case KernelKind::Uniform:
            return std::fabs(x) <= 1.0 ? 0.5 : 0.0;
    }
    return 0.0;
}

std::string KernelSpec::name() const {
    switch (kind) {
        case KernelKind::Gaussian: return "gaussian";
        case KernelKind::Epanechnikov: return "epanechnikov";
        case KernelKind::Uniform: return "uniform";
    }
    return "gaussian";
}

namespace {

void check_inputs(std::span<const double> abs_resid, double h) {
    if (abs_resid.size() < 8) {
        throw InsufficientLength("need at least 8 residuals");
    }
    if (!(h > 0.0) || h > 1.0) {
        throw InvalidInput("bandwidth must lie in (0, 1]");
    }
    bool any_positive = false;
    for (double r : abs_resid) {
        if (r < 0.0 || !std::isfinite(r)) {
            throw InvalidInput("absolute residuals must be finite and nonnegative");
        }
        any_positive = any_positive || r > 0.0;
    }
    if (!any_positive) {
        throw DegenerateResiduals("all residuals are zero");
    }
}

// Kernel values depend on |t - s| only; precompute per distance d = 0..n-1.
std::vector<double> kernel_by_distance(std::size_t n, double h, const KernelSpec& kernel) {
    std::vector<double> k(n);
    const double scale = static_cast<double>(n) * h;
    for (std::size_t d = 0; d < n; ++d) {
        k[d] = kernel(static_cast<double>(d) / scale);
    }
    return k;
}

}  // namespace

std::vector<double> kernel_weight_row(std::size_t n, double h, const KernelSpec& kernel,
                                      std::size_t t) {
    if (t < 1 || t > n) {
        throw InvalidInput("index t out of range");
    }
    const auto k = kernel_by_distance(n, h, kernel);
    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t s = 1; s <= n; ++s) {
        const std::size_t d = t >= s ? t - s : s - t;
        w[s - 1] = k[d];
        sum += k[d];
    }
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

VolatilityEstimate estimate_volatility(std::span<const double> abs_resid, double h,
                                       const KernelSpec& kernel) {
    check_inputs(abs_resid, h);
    const std::size_t n = abs_resid.size();
    const auto k = kernel_by_distance(n, h, kernel);

    VolatilityEstimate est;
    est.bandwidth_h = h;
    est.kernel = kernel;
    est.sigma_hat.resize(n);
    for (std::size_t t = 1; t <= n; ++t) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t s = 1; s <= n; ++s) {
            const double kv = k[t >= s ? t - s : s - t];
            num += kv * abs_resid[s - 1];
            den += kv;
        }
        est.sigma_hat[t - 1] = num / den;
        if (!(est.sigma_hat[t - 1] > 0.0)) {
            // compact kernel over a window of zero residuals
            throw DegenerateResiduals(
                "volatility path hits zero; widen the bandwidth or kernel support");
        }
    }
    return est;
}

double leave_one_out_sigma(std::span<const double> abs_resid, double h,
                           const KernelSpec& kernel, std::size_t t) {
    const std::size_t n = abs_resid.size();
    if (t < 1 || t > n) {
        throw InvalidInput("index t out of range");
    }
    const auto k = kernel_by_distance(n, h, kernel);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t s = 1; s <= n; ++s) {
        if (s == t) {
            continue;
        }
        const double kv = k[t >= s ? t - s : s - t];
        num += kv * abs_resid[s - 1];
        den += kv;
    }
    return den > 0.0 ? num / den : 0.0;
}

double cv_bandwidth(std::span<const double> abs_resid, const KernelSpec& kernel,
                    std::span<const double> grid) {
    if (grid.empty()) {
        throw InvalidInput("bandwidth grid is empty");
    }
    check_inputs(abs_resid, grid[0]);
    const std::size_t n = abs_resid.size();

    double best_h = 0.0;
    double best_score = 0.0;
    bool have_best = false;
    for (const double h : grid) {
        if (!(h > 0.0) || h > 1.0) {
            throw InvalidInput("bandwidth candidates must lie in (0, 1]");
        }
        const auto k = kernel_by_distance(n, h, kernel);
        double score = 0.0;
        for (std::size_t t = 1; t <= n; ++t) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t s = 1; s <= n; ++s) {
                if (s == t) {
                    continue;
                }
                const double kv = k[t >= s ? t - s : s - t];
                num += kv * abs_resid[s - 1];
                den += kv;
            }
            // den can only vanish for compact kernels with h so small that no
            // neighbor is in range; treat the leave-one-out mean as 0 then.
            const double loo = den > 0.0 ? num / den : 0.0;
            const double e = abs_resid[t - 1] - loo;
            score += e * e;
        }
        if (!have_best || score < best_score || (score == best_score && h < best_h)) {
            best_h = h;
            best_score = score;
            have_best = true;
        }
    }
    return best_h;
}

std::vector<double> default_bandwidth_grid(std::size_t n) {
    static constexpr double kFactors[] = {0.25, 0.35, 0.5, 0.7, 1.0, 1.4, 2.0, 2.8, 4.0};
    const double base = std::pow(static_cast<double>(n), -0.2);
    std::vector<double> grid;
    grid.reserve(std::size(kFactors));
    for (double c : kFactors) {
        const double h = std::min(c * base, 1.0);
        if (grid.empty() || h > grid.back()) {
            grid.push_back(h);
        }
    }
    return grid;
}

}  // namespace heterour
