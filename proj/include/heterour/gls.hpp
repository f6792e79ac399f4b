#pragma once

#include "heterour/series.hpp"

#include <vector>

namespace heterour {

enum class DeterministicKind { None, Mean, Trend };

/**
 * @brief Deterministic-component specification with quasi-differencing constant.
 *
 * c_bar defaults follow the usual local-to-unity choices: 7 for a constant
 * mean, 13.5 for a linear trend. kind == None ignores c_bar.
 */
struct DeterministicSpec {
    DeterministicKind kind = DeterministicKind::None;
    double c_bar = 0.0;

    [[nodiscard]] static DeterministicSpec none() noexcept { return {DeterministicKind::None, 0.0}; }
    [[nodiscard]] static DeterministicSpec mean(double c_bar = 7.0) noexcept {
        return {DeterministicKind::Mean, c_bar};
    }
    [[nodiscard]] static DeterministicSpec trend(double c_bar = 13.5) noexcept {
        return {DeterministicKind::Trend, c_bar};
    }

    /// Number of deterministic regressors (0, 1, or 2).
    [[nodiscard]] std::size_t dim() const noexcept {
        switch (kind) {
            case DeterministicKind::None: return 0;
            case DeterministicKind::Mean: return 1;
            case DeterministicKind::Trend: return 2;
        }
        return 0;
    }
};

/// Result of GLS demeaning/detrending: coefficients and the adjusted series.
struct GlsFit {
    std::vector<double> mu_hat;  ///< empty (None), (mu) or (mu1, mu2)
    TimeSeries adjusted;         ///< y_t^d = x_t - mu_hat' d_t
};

/**
 * @brief Remove deterministic components by OLS on quasi-differenced data.
 *
 * Regresses x_t - (1 - c_bar/T) x_{t-1} on d_t - (1 - c_bar/T) d_{t-1} for
 * t = 2..T, with the first observation entering untransformed (x_1 on d_1);
 * d_t is 1 (Mean) or (1, t)' (Trend). Returns mu_hat and the adjusted
 * series x_t - mu_hat' d_t. kind == None passes the input through unchanged.
 *
 * @throws SingularDesign when the regressor cross-product is singular at
 *         relative tolerance 1e-12
 */
[[nodiscard]] GlsFit gls_adjust(const TimeSeries& x, const DeterministicSpec& spec);

}  // namespace heterour
