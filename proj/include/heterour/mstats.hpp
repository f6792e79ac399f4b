#pragma once

#include "heterour/bootstrap.hpp"
#include "heterour/series.hpp"

namespace heterour {

/**
 * @brief Least-squares M statistics for a unit root.
 *
 * From the augmented regression
 * Delta y_t = b0 y_{t-1} + sum_{i=1..p} b_i Delta y_{t-i} + e_t:
 *   MZ_alpha = (T^{-1} y_T^2 - s_ar^2) / (2 T^{-2} sum y_{t-1}^2),
 *   MSB      = sqrt(T^{-2} sum y_{t-1}^2 / s_ar^2),
 *   MZ_t     = MZ_alpha * MSB,
 * with s_ar^2 = sigma2 / (1 - sum b_i)^2 and sigma2 the OLS residual
 * variance. The lagged sum of squares runs over the observed values
 * y_1 .. y_{T-1}.
 */
struct MStats {
    double mz_alpha = 0.0;
    double msb = 0.0;
    double mz_t = 0.0;
    double s_ar2 = 0.0;
    int lag_p = 0;
};

/**
 * @param y     series with size >= lag_p + 10
 * @param lag_p number of lagged differences in the augmented regression
 * @throws SingularDesign, NearUnitDenominator
 */
[[nodiscard]] MStats m_statistics(const TimeSeries& y, int lag_p);

/// Adaptive block bootstrap test using MZ_alpha as the statistic; same
/// pipeline and conventions as abb_test.
[[nodiscard]] TestResult abb_m_test(const TimeSeries& y, const TestConfig& cfg, int lag_p);

}  // namespace heterour
