#pragma once

#include "heterour/bootstrap.hpp"
#include "heterour/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heterour {

enum class Innovation { Normal, StudentT3, DoubleExp };
enum class VolCase { Constant, OneShift, TwoShifts, Smooth };

/**
 * @brief Simulation design: y_t = exp(-c/T) y_{t-1} + sigma_t eps_t with an
 * ARMA(1,1) error eps_t = theta eps_{t-1} + phi eta_{t-1} + eta_t.
 *
 * c = 0 is the unit root null; c > 0 is a local-to-unity alternative.
 */
struct DgpSpec {
    double c = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    Innovation innovation = Innovation::Normal;
    VolCase vol_case = VolCase::Constant;
    double sigma0 = 1.0;
    double sigma1 = 1.0;
    int T = 100;

    void validate() const;  ///< |theta| < 1, T >= 25, sigma0/sigma1 > 0, c >= 0
};

/// Deterministic volatility path sigma(t/T), t = 1..T:
///   Constant:  sigma0
///   OneShift:  sigma0 + (sigma1 - sigma0) I(tau > 0.5)
///   TwoShifts: sigma0 + (sigma1 - sigma0) I(0.3 < tau < 0.7)
///   Smooth:    sigma0 + (sigma1 - sigma0) (1 - exp(-15 (tau - 0.5)^2))
[[nodiscard]] std::vector<double> volatility_profile(VolCase vol_case, double sigma0,
                                                     double sigma1, int T);

/// Simulate one series; the ARMA error recursion is warmed up with 100
/// burn-in steps from eps = eta = 0. Deterministic given the seed.
[[nodiscard]] TimeSeries simulate_series(const DgpSpec& spec, std::uint64_t seed);

/// Rejection frequencies from a Monte Carlo experiment.
struct McReport {
    DgpSpec spec;
    TestConfig config;
    double alpha = 0.05;
    int n_reps = 0;
    std::optional<double> rate_lt;
    std::optional<double> rate_tt;
    std::optional<double> rate_mz;
};

/**
 * @brief Run the bootstrap test on n_reps simulated series and count
 * rejections (p* < alpha) per statistic.
 *
 * Replication j uses seeds derived from (master_seed, j) only, so the
 * report is independent of scheduling and thread count.
 */
[[nodiscard]] McReport mc_size_power(const DgpSpec& spec, const TestConfig& cfg, int n_reps,
                                     double alpha, std::uint64_t master_seed);

[[nodiscard]] std::string to_string(Innovation innovation);
[[nodiscard]] std::string to_string(VolCase vol_case);
[[nodiscard]] Innovation innovation_from_string(const std::string& name);
[[nodiscard]] VolCase vol_case_from_string(const std::string& name);

}  // namespace heterour
