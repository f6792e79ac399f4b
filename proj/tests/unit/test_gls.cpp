#include "heterour/gls.hpp"

#include "heterour/rng.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

using heterour::DeterministicKind;
using heterour::DeterministicSpec;
using heterour::gls_adjust;
using heterour::Rng;
using heterour::TimeSeries;

namespace {

// Independent oracle: build the quasi-differenced design explicitly (first
// row untransformed) and solve the 1- or 2-variable OLS by Cramer's rule.
std::vector<double> quasi_diff_ols_oracle(const std::vector<double>& x,
                                          const DeterministicSpec& spec) {
    const std::size_t T = x.size();
    const double a = spec.c_bar / static_cast<double>(T);
    const std::size_t k = spec.dim();

    std::vector<std::array<double, 2>> design(T);
    std::vector<double> dep(T);
    for (std::size_t t = 1; t <= T; ++t) {
        const double d1 = 1.0;
        const double d2 = static_cast<double>(t);
        if (t == 1) {
            design[t - 1] = {d1, d2};
            dep[t - 1] = x[0];
        } else {
            design[t - 1] = {d1 - (1.0 - a) * 1.0, d2 - (1.0 - a) * (d2 - 1.0)};
            dep[t - 1] = x[t - 1] - (1.0 - a) * x[t - 2];
        }
    }

    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    for (std::size_t i = 0; i < T; ++i) {
        s11 += design[i][0] * design[i][0];
        s12 += design[i][0] * design[i][1];
        s22 += design[i][1] * design[i][1];
        s1y += design[i][0] * dep[i];
        s2y += design[i][1] * dep[i];
    }
    if (k == 1) {
        return {s1y / s11};
    }
    const double det = s11 * s22 - s12 * s12;
    return {(s22 * s1y - s12 * s2y) / det, (s11 * s2y - s12 * s1y) / det};
}

}  // namespace

TEST_CASE("constant series is exactly absorbed by demeaning") {
    std::vector<double> x(20, 5.0);
    const auto fit = gls_adjust(TimeSeries(x), DeterministicSpec::mean());
    REQUIRE(fit.mu_hat.size() == 1);
    CHECK(fit.mu_hat[0] == doctest::Approx(5.0).epsilon(1e-12));
    for (double v : fit.adjusted.values()) {
        CHECK(std::fabs(v) <= 1e-10);
    }
}

TEST_CASE("kind none passes the series through unchanged") {
    std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6};
    const auto fit = gls_adjust(TimeSeries(x), DeterministicSpec::none());
    CHECK(fit.mu_hat.empty());
    CHECK(fit.adjusted.values() == x);
}

TEST_CASE("exact linear trend is absorbed by detrending") {
    std::vector<double> x(30);
    for (std::size_t t = 1; t <= x.size(); ++t) {
        x[t - 1] = 2.0 + 3.0 * static_cast<double>(t);
    }
    const auto fit = gls_adjust(TimeSeries(x), DeterministicSpec::trend());
    REQUIRE(fit.mu_hat.size() == 2);
    CHECK(fit.mu_hat[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.mu_hat[1] == doctest::Approx(3.0).epsilon(1e-9));
    for (double v : fit.adjusted.values()) {
        CHECK(std::fabs(v) <= 1e-10);
    }
}

TEST_CASE("gls coefficients match the direct OLS oracle") {
    Rng rng(555);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(40);
        double level = 0.0;
        for (auto& v : x) {
            level += rng.normal();
            v = 1.5 + 0.2 * level + rng.normal();
        }
        for (const auto spec : {DeterministicSpec::mean(), DeterministicSpec::trend()}) {
            const auto fit = gls_adjust(TimeSeries(x), spec);
            const auto oracle = quasi_diff_ols_oracle(x, spec);
            REQUIRE(fit.mu_hat.size() == oracle.size());
            for (std::size_t i = 0; i < oracle.size(); ++i) {
                CHECK(fit.mu_hat[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("demeaning is affine equivariant") {
    Rng rng(99);
    std::vector<double> base(25);
    double level = 0.0;
    for (auto& v : base) {
        level += rng.normal();
        v = level;
    }
    std::vector<double> shifted(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        shifted[i] = base[i] + 10.0;
    }
    const auto f0 = gls_adjust(TimeSeries(base), DeterministicSpec::mean());
    const auto f1 = gls_adjust(TimeSeries(shifted), DeterministicSpec::mean());
    CHECK(f1.mu_hat[0] - f0.mu_hat[0] == doctest::Approx(10.0).epsilon(1e-10));
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(f1.adjusted[i] == doctest::Approx(f0.adjusted[i]).epsilon(1e-9));
    }
}

TEST_CASE("normal equations hold at the fitted coefficients") {
    Rng rng(2024);
    std::vector<double> x(60);
    double level = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        level += rng.normal();
        x[t] = 4.0 + 0.05 * static_cast<double>(t) + level;
    }
    for (const auto spec : {DeterministicSpec::mean(), DeterministicSpec::trend()}) {
        const auto fit = gls_adjust(TimeSeries(x), spec);
        const std::size_t T = x.size();
        const double a = spec.c_bar / static_cast<double>(T);
        std::vector<double> score(spec.dim(), 0.0);
        for (std::size_t t = 1; t <= T; ++t) {
            std::array<double, 2> rho{1.0, static_cast<double>(t)};
            double z = x[t - 1];
            if (t >= 2) {
                rho = {a, 1.0 + a * (static_cast<double>(t) - 1.0)};
                z = x[t - 1] - (1.0 - a) * x[t - 2];
            }
            double resid = z - fit.mu_hat[0] * rho[0];
            if (spec.dim() == 2) {
                resid -= fit.mu_hat[1] * rho[1];
            }
            for (std::size_t i = 0; i < spec.dim(); ++i) {
                score[i] += rho[i] * resid;
            }
        }
        for (double s : score) {
            CHECK(std::fabs(s) <= 1e-8);
        }
    }
}

TEST_CASE("c_bar defaults") {
    CHECK(DeterministicSpec::mean().c_bar == 7.0);
    CHECK(DeterministicSpec::trend().c_bar == 13.5);
    CHECK(DeterministicSpec::mean().kind == DeterministicKind::Mean);
}
