#pragma once

#include "heterour/errors.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace heterour {

enum class KernelKind { Gaussian, Epanechnikov, Uniform };

/// Smoothing kernel; all three variants are nonnegative, bounded, continuous
/// on their support and integrate to one.
struct KernelSpec {
    KernelKind kind = KernelKind::Gaussian;

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] std::string name() const;
};

/**
 * @brief Estimated volatility path sigma_hat_t = sum_s w_{t,s} |u_s|.
 *
 * Weights w_{t,s} are proportional to k((t-s)/(n h)) and normalized to sum
 * to one over s, which absorbs the boundary effect.
 */
struct VolatilityEstimate {
    std::vector<double> sigma_hat;
    double bandwidth_h = 0.0;
    KernelSpec kernel;

    [[nodiscard]] std::size_t size() const noexcept { return sigma_hat.size(); }
};

/// Normalized weight row {w_{t,s}}_{s=1..n} for 1-based index t. Exposed for
/// verification of the weight-sum invariant.
[[nodiscard]] std::vector<double> kernel_weight_row(std::size_t n, double h,
                                                    const KernelSpec& kernel, std::size_t t);

/**
 * @brief Nonparametric volatility path from absolute residuals.
 *
 * @param abs_resid |u_t|, length >= 8, entries >= 0
 * @param h bandwidth in (0, 1]
 * @throws DegenerateResiduals when all residuals are zero
 */
[[nodiscard]] VolatilityEstimate estimate_volatility(std::span<const double> abs_resid,
                                                     double h, const KernelSpec& kernel);

/// Leave-one-out estimate sigma_hat_{-t}(h): weights renormalized over
/// s != t. t is 1-based.
[[nodiscard]] double leave_one_out_sigma(std::span<const double> abs_resid, double h,
                                         const KernelSpec& kernel, std::size_t t);

/**
 * @brief Leave-one-out cross-validated bandwidth.
 *
 * Minimizes sum_t (|u_t| - sigma_hat_{-t}(h))^2 over the candidate grid,
 * where sigma_hat_{-t} renormalizes the weights over s != t. Ties break
 * toward the smaller candidate.
 */
[[nodiscard]] double cv_bandwidth(std::span<const double> abs_resid, const KernelSpec& kernel,
                                  std::span<const double> grid);

/// Default candidate grid c * n^{-1/5} for c in {0.25 ... 4.0}, clipped to (0, 1].
[[nodiscard]] std::vector<double> default_bandwidth_grid(std::size_t n);

}  // namespace heterour
