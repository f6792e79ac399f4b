#include "heterour/mstats.hpp"

#include <cmath>
#include <vector>

namespace heterour {

namespace {

// Cholesky solve of the (p+1)-dimensional normal equations.
std::vector<double> solve_spd(std::vector<double>& a, std::vector<double>& rhs, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double sum = a[i * k + j];
            for (std::size_t l = 0; l < i; ++l) {
                sum -= a[i * k + l] * a[j * k + l];
            }
            if (i == j) {
                if (!(sum > 1e-12 * std::fabs(a[i * k + i]) && sum > 0.0)) {
                    throw SingularDesign("augmented regression design is singular");
                }
                a[i * k + i] = std::sqrt(sum);
            } else {
                a[j * k + i] = sum / a[i * k + i];
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        double sum = rhs[i];
        for (std::size_t l = 0; l < i; ++l) {
            sum -= a[i * k + l] * rhs[l];
        }
        rhs[i] = sum / a[i * k + i];
    }
    for (std::size_t ii = k; ii-- > 0;) {
        double sum = rhs[ii];
        for (std::size_t l = ii + 1; l < k; ++l) {
            sum -= a[l * k + ii] * rhs[l];
        }
        rhs[ii] = sum / a[ii * k + ii];
    }
    return rhs;
}

}  // namespace

MStats m_statistics(const TimeSeries& y, int lag_p) {
    if (lag_p < 0) {
        throw InvalidInput("lag_p must be >= 0");
    }
    const std::size_t T = y.size();
    const auto p = static_cast<std::size_t>(lag_p);
    if (T < p + 10) {
        throw InsufficientLength("need T >= lag_p + 10 observations");
    }

    // Delta y_t on y_{t-1} and Delta y_{t-1} .. Delta y_{t-p}, t = p+2 .. T.
    const std::size_t k = p + 1;
    const std::size_t n_obs = T - p - 1;
    std::vector<double> xtx(k * k, 0.0);
    std::vector<double> xty(k, 0.0);
    std::vector<std::vector<double>> rows(n_obs, std::vector<double>(k));
    std::vector<double> dep(n_obs);
    for (std::size_t t = p + 2; t <= T; ++t) {
        const std::size_t r = t - p - 2;
        dep[r] = y[t - 1] - y[t - 2];
        rows[r][0] = y[t - 2];
        for (std::size_t i = 1; i <= p; ++i) {
            rows[r][i] = y[t - 1 - i] - y[t - 2 - i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                xtx[i * k + j] += rows[r][i] * rows[r][j];
            }
            xty[i] += rows[r][i] * dep[r];
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            xtx[i * k + j] = xtx[j * k + i];
        }
    }

    const std::vector<double> beta = solve_spd(xtx, xty, k);

    double rss = 0.0;
    for (std::size_t r = 0; r < n_obs; ++r) {
        double fitted = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            fitted += beta[i] * rows[r][i];
        }
        const double e = dep[r] - fitted;
        rss += e * e;
    }
    if (n_obs <= k) {
        throw InsufficientLength("no degrees of freedom in the augmented regression");
    }
    const double sigma2 = rss / static_cast<double>(n_obs - k);

    double beta_sum = 0.0;
    for (std::size_t i = 1; i <= p; ++i) {
        beta_sum += beta[i];
    }
    const double denom = 1.0 - beta_sum;
    if (std::fabs(denom) < 1e-6) {
        throw NearUnitDenominator("1 - sum(beta_i) is numerically zero");
    }

    double sumsq_lag = 0.0;
    for (std::size_t t = 2; t <= T; ++t) {
        sumsq_lag += y[t - 2] * y[t - 2];
    }
    if (!(sumsq_lag > 0.0)) {
        throw SingularDesign("lagged sum of squares is zero");
    }

    const auto Tf = static_cast<double>(T);
    MStats out;
    out.lag_p = lag_p;
    out.s_ar2 = sigma2 / (denom * denom);
    const double scaled_ss = sumsq_lag / (Tf * Tf);
    out.mz_alpha = (y[T - 1] * y[T - 1] / Tf - out.s_ar2) / (2.0 * scaled_ss);
    out.msb = std::sqrt(scaled_ss / out.s_ar2);
    out.mz_t = out.mz_alpha * out.msb;
    return out;
}

TestResult abb_m_test(const TimeSeries& y, const TestConfig& cfg, int lag_p) {
    TestConfig local = cfg;
    local.lag_p = lag_p;
    return detail::run_abb(y, local, false, false, true);
}

}  // namespace heterour
