#pragma once

#include "heterour/series.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace heterour {

/// Sign function: I(x > 0) - I(x < 0).
[[nodiscard]] constexpr int sgn(double x) noexcept {
    return (x > 0.0) - (x < 0.0);
}

/**
 * @brief Result of the through-origin AR(1) least-absolute-deviations fit.
 *
 * gamma_hat minimizes sum_t |y_t - gamma * y_{t-1}| over t in
 * [t_range.first, t_range.second] (1-based, inclusive). When the regression
 * starts at t = 1, the presample value y_0 is taken to be zero.
 */
struct LadFit {
    double gamma_hat = 0.0;
    std::vector<double> residuals;             ///< u_t = y_t - gamma_hat * y_{t-1}
    double objective = 0.0;                    ///< sum of |residuals|
    std::pair<std::size_t, std::size_t> t_range{1, 0};

    /// Number of observations entering the regression.
    [[nodiscard]] std::size_t n_obs() const noexcept {
        return t_range.second - t_range.first + 1;
    }
};

/**
 * @brief Exact LAD fit of y_t on y_{t-1} through the origin.
 *
 * The objective is convex piecewise-linear with breakpoints y_t / y_{t-1}
 * (for y_{t-1} != 0) and weights |y_{t-1}|; the minimizer is the weighted
 * median of the breakpoints. When the cumulative weight hits exactly half
 * the total, the objective is flat on an interval and the midpoint of that
 * interval is returned. Lagged values with |y_{t-1}| < 1e-30 contribute a
 * gamma-constant term and are excluded from the median.
 *
 * @param y        series of length >= 8
 * @param lag_start first regression index, 1 (y_0 := 0) or 2
 * @throws AllLagsZero when every lagged regressor is (numerically) zero
 */
[[nodiscard]] LadFit lad_fit(const TimeSeries& y, std::size_t lag_start = 1);

/// Evaluate sum_t |y_t - gamma * y_{t-1}| over the same index range as lad_fit.
[[nodiscard]] double lad_objective(const TimeSeries& y, double gamma,
                                   std::size_t lag_start = 1);

}  // namespace heterour
