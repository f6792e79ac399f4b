#include "heterour/mstats.hpp"

#include "heterour/dgp.hpp"
#include "heterour/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using heterour::m_statistics;
using heterour::mix_seed;
using heterour::MStats;
using heterour::Rng;
using heterour::TimeSeries;

namespace {

TimeSeries random_walk(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<double> y(n);
    double level = 0.0;
    for (auto& v : y) {
        level += rng.normal();
        v = level;
    }
    return TimeSeries(std::move(y));
}

// Straight transcription of the p = 0 formulas: OLS slope of Delta y_t on
// y_{t-1}, unbiased residual variance, and the three statistics.
MStats mz_oracle_p0(const TimeSeries& y) {
    const std::size_t T = y.size();
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t t = 2; t <= T; ++t) {
        const double dy = y[t - 1] - y[t - 2];
        sxy += y[t - 2] * dy;
        sxx += y[t - 2] * y[t - 2];
    }
    const double beta0 = sxy / sxx;
    double rss = 0.0;
    for (std::size_t t = 2; t <= T; ++t) {
        const double e = (y[t - 1] - y[t - 2]) - beta0 * y[t - 2];
        rss += e * e;
    }
    const double sigma2 = rss / static_cast<double>(T - 2);

    const auto Tf = static_cast<double>(T);
    MStats out;
    out.s_ar2 = sigma2;
    const double scaled = sxx / (Tf * Tf);
    out.mz_alpha = (y[T - 1] * y[T - 1] / Tf - sigma2) / (2.0 * scaled);
    out.msb = std::sqrt(scaled / sigma2);
    out.mz_t = out.mz_alpha * out.msb;
    return out;
}

}  // namespace

TEST_CASE("p = 0 leaves the variance unadjusted") {
    const auto y = random_walk(1, 80);
    const auto s = m_statistics(y, 0);
    const auto oracle = mz_oracle_p0(y);
    CHECK(s.s_ar2 == doctest::Approx(oracle.s_ar2).epsilon(1e-12));
}

TEST_CASE("mz_t factorizes on any input") {
    Rng rng(12345);
    for (int rep = 0; rep < 100; ++rep) {
        const auto y = random_walk(mix_seed(3, static_cast<std::uint64_t>(rep)),
                                   40 + rng.uniform_below(60));
        const int p = static_cast<int>(rng.uniform_below(3));
        const auto s = m_statistics(y, p);
        CHECK(std::fabs(s.mz_t - s.mz_alpha * s.msb) <= 1e-12 * (1.0 + std::fabs(s.mz_t)));
    }
}

TEST_CASE("statistics match the footnote transcription oracle") {
    const auto y = random_walk(20240807, 100);
    const auto s = m_statistics(y, 0);
    const auto oracle = mz_oracle_p0(y);
    CHECK(s.mz_alpha == doctest::Approx(oracle.mz_alpha).epsilon(1e-10));
    CHECK(s.msb == doctest::Approx(oracle.msb).epsilon(1e-10));
    CHECK(s.mz_t == doctest::Approx(oracle.mz_t).epsilon(1e-10));
}

TEST_CASE("msb squared recomputation on a pure random walk") {
    const auto y = random_walk(5150, 150);
    const auto s = m_statistics(y, 0);
    double sxx = 0.0;
    for (std::size_t t = 2; t <= y.size(); ++t) {
        sxx += y[t - 2] * y[t - 2];
    }
    const double Tf = static_cast<double>(y.size());
    CHECK(s.msb * s.msb == doctest::Approx(sxx / (Tf * Tf) / s.s_ar2).epsilon(1e-12));
}

TEST_CASE("error paths") {
    // linear series: Delta y is constant, so the lagged-difference column
    // reproduces it exactly and 1 - sum(beta) collapses to zero
    std::vector<double> linear(40);
    for (std::size_t t = 0; t < linear.size(); ++t) {
        linear[t] = static_cast<double>(t + 1);
    }
    CHECK_THROWS_AS((void)m_statistics(TimeSeries(linear), 1),
                    heterour::NearUnitDenominator);

    // constant series: the difference column is identically zero
    CHECK_THROWS_AS((void)m_statistics(TimeSeries(std::vector<double>(40, 2.0)), 1),
                    heterour::SingularDesign);

    CHECK_THROWS_AS((void)m_statistics(random_walk(1, 12), 5),
                    heterour::InsufficientLength);
    CHECK_THROWS_AS((void)m_statistics(random_walk(1, 50), -1), heterour::InvalidInput);
}

TEST_CASE("bootstrap m-test is deterministic and bounded") {
    heterour::DgpSpec spec;
    spec.vol_case = heterour::VolCase::OneShift;
    spec.sigma1 = 5.0;
    spec.T = 100;
    const auto y = heterour::simulate_series(spec, 8);

    heterour::TestConfig cfg;
    cfg.B = 49;
    cfg.block = 1;
    cfg.seed = 4;
    const auto r1 = heterour::abb_m_test(y, cfg, 0);
    const auto r2 = heterour::abb_m_test(y, cfg, 0);
    REQUIRE(r1.mz.has_value());
    CHECK(!r1.lt.has_value());
    CHECK(r1.mz->observed == r2.mz->observed);
    CHECK(r1.mz->p_value == r2.mz->p_value);
    CHECK(r1.mz->p_value >= 0.0);
    CHECK(r1.mz->p_value <= 1.0);

    std::size_t below = 0;
    for (double d : r1.mz->draws.stat_draws) {
        below += d < r1.mz->observed ? 1 : 0;
    }
    CHECK(r1.mz->p_value == static_cast<double>(below) / static_cast<double>(cfg.B));
}
