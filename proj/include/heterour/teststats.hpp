#pragma once

#include "heterour/lad.hpp"
#include "heterour/series.hpp"
#include "heterour/volatility.hpp"

#include <span>

namespace heterour {

/**
 * @brief Coefficient statistic L_T = n (gamma_hat - 1) and t-ratio
 * t_T = 2 f0_hat sqrt(centered_ss) (gamma_hat - 1).
 *
 * n is the number of regression observations; centered_ss is the centered
 * sum of squares of the lagged regressor vector (the quadratic form through
 * the demeaning projector, computed without materializing it).
 */
struct StatPair {
    double l_stat = 0.0;
    double t_stat = 0.0;
    double f0_hat = 0.0;
    double centered_ss = 0.0;
    bool lagged_degenerate = false;  ///< lagged regressor constant; t_stat is 0
};

/// Silverman rule-of-thumb bandwidth 0.9 min(sd, IQR/1.34) n^{-1/5}; falls
/// back to sd alone when the IQR is zero.
/// @throws ZeroBandwidth when sd and IQR are both zero
[[nodiscard]] double silverman_bandwidth(std::span<const double> data);

/// Gaussian kernel density estimate at zero with the given bandwidth.
[[nodiscard]] double density_at_zero(std::span<const double> std_resid, double bandwidth);

/// As above with the Silverman bandwidth.
[[nodiscard]] double density_at_zero(std::span<const double> std_resid);

/**
 * @brief Compute both unit root statistics from a fit and a volatility path.
 *
 * The fit must come from y with a matching t_range, and sigma_hat must have
 * one entry per residual. The density at zero is estimated from the
 * standardized residuals u_t / sigma_hat_t.
 */
[[nodiscard]] StatPair compute_stats(const TimeSeries& y, const LadFit& fit,
                                     const VolatilityEstimate& sigma_hat);

}  // namespace heterour
