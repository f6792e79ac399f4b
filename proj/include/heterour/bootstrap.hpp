#pragma once

#include "heterour/gls.hpp"
#include "heterour/rng.hpp"
#include "heterour/series.hpp"
#include "heterour/volatility.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace heterour {

/**
 * @brief Geometry of one adaptive block bootstrap resampling pass.
 *
 * For a residual pool of length n and block length b, indices are drawn
 * uniformly from W = {-n, ..., -1-b} u {1, ..., n-b}; negative indices map
 * to sign-flipped residuals so the effective pool is {+/- e_1 ... e_{n-b}},
 * which has exact zero mean and zero median.
 */
struct AbbPlan {
    int block_len_b = 1;
    int n_resid = 0;
    int k_blocks = 0;        ///< floor((n_resid - 1) / b)
    int index_set_size = 0;  ///< |W| = 2 (n_resid - b)

    [[nodiscard]] static AbbPlan make(int n_resid, int block_len_b);
};

/// One statistic's bootstrap sample together with the tuning that produced it.
struct BootstrapDraws {
    std::vector<double> stat_draws;
    int b_used = 0;
    double h_used = 0.0;
    std::uint64_t seed = 0;
};

enum class StatChoice { Lt, Tt, Mz, All };

/**
 * @brief Resolved configuration for one bootstrap unit root test.
 *
 * bandwidth/block empty means data-driven selection (cross-validation and
 * the subsample block rule). known_sigma, when nonempty, supplies the true
 * volatility path (one value per observation of the input series) and
 * bypasses estimation.
 */
struct TestConfig {
    DeterministicSpec deterministic{};
    StatChoice stat = StatChoice::All;
    int B = 499;
    double alpha = 0.05;
    std::optional<double> bandwidth{};
    std::optional<int> block{};
    KernelSpec kernel{};
    std::uint64_t seed = 0;
    int lag_p = 0;
    std::vector<double> known_sigma{};

    void validate() const;  ///< B >= 19, alpha in (0, 0.5], lag_p >= 0
};

/// Observed statistic, left-tail bootstrap p-value, and the draws behind it.
struct StatOutcome {
    double observed = 0.0;
    double p_value = 1.0;
    BootstrapDraws draws;
};

/// Full test output; entries are present for the statistics that were run.
struct TestResult {
    DeterministicSpec deterministic{};
    std::uint64_t seed = 0;
    int B = 0;
    int b_used = 0;
    double h_used = 0.0;  ///< 0 when the volatility path was supplied
    double gamma_hat = 1.0;
    std::optional<StatOutcome> lt;
    std::optional<StatOutcome> tt;
    std::optional<StatOutcome> mz;
};

/// Elementwise residual / sigma. Throws LengthMismatch on unequal lengths.
[[nodiscard]] std::vector<double> standardize_residuals(std::span<const double> resid,
                                                        std::span<const double> sigma);

/// k_blocks + 1 indices drawn independently and uniformly from W.
[[nodiscard]] std::vector<int> draw_block_indices(const AbbPlan& plan, Rng& rng);
[[nodiscard]] std::vector<int> draw_block_indices(const AbbPlan& plan, std::uint64_t rng_seed);

/**
 * @brief Paste resampled blocks into a pseudo error sequence of length n_resid.
 *
 * Element t (1-based) comes from block m = floor((t-1)/b) at offset
 * s = t - m b - 1: residual i_m + s for positive indices, the negation of
 * residual i_m + s + n + 1 for negative ones. The final block is truncated.
 */
[[nodiscard]] std::vector<double> build_pseudo_errors(std::span<const double> std_resid,
                                                      std::span<const int> indices,
                                                      const AbbPlan& plan);

/// Cumulate sigma_t * eps_t from zero into an exact unit root series.
[[nodiscard]] TimeSeries build_pseudo_series(std::span<const double> pseudo_err,
                                             std::span<const double> sigma);

/**
 * @brief Closed-form moving-block bootstrap estimate of
 * var(n^{-1/2} sum z_t): psi(b) = (b (n-b+1))^{-1} sum_j (S_j - b zbar)^2
 * over the n-b+1 block sums S_j. b = 1 gives the plain sample variance.
 */
[[nodiscard]] double mbb_variance(std::span<const double> z, int b);

/**
 * @brief Subsample-based block length selection.
 *
 * Computes psi on the full series with a pilot block length, then picks the
 * b in {1..ceil(m/3)} whose subsample estimates over all n-m runs of length
 * m track it best in squared error; the full-sample answer is
 * round((n/m)^{1/3} b_m), clipped to [1, n/3]. Iterated up to max_iter
 * times, replacing the pilot by the previous answer, until a fixed point.
 */
[[nodiscard]] int hhj_block_length(std::span<const double> std_resid, int m, int pilot_b,
                                   int max_iter = 3);

/// hhj_block_length with defaults m = 2 ceil(sqrt(n)) clipped to [16, n/4],
/// pilot ceil(n^{1/3}), three iterations.
[[nodiscard]] int auto_block_length(std::span<const double> std_resid);

/**
 * @brief Adaptive block bootstrap unit root test (L and t statistics).
 *
 * Pipeline: deterministic adjustment, LAD fit, volatility estimation on the
 * absolute residuals (cross-validated bandwidth unless fixed), observed
 * statistics, then B pseudo series built from block-resampled standardized
 * residuals rescaled by the same volatility path. Pseudo series are
 * re-adjusted for Mean/Trend before refitting. Left-tail p-values
 * p* = B^{-1} sum I(stat*_j < stat); replicate j depends only on
 * (cfg.seed, j), so results are independent of thread count.
 */
[[nodiscard]] TestResult abb_test(const TimeSeries& y, const TestConfig& cfg);

namespace detail {
/// Shared bootstrap engine; statistic selection per flag.
[[nodiscard]] TestResult run_abb(const TimeSeries& y, const TestConfig& cfg, bool want_lt,
                                 bool want_tt, bool want_mz);
}  // namespace detail

}  // namespace heterour
