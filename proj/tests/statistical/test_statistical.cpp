// Seeded statistical oracles that are too slow for the basic unit suite.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heterour/dgp.hpp"
#include "heterour/mstats.hpp"
#include "heterour/parallel.hpp"
#include "heterour/rng.hpp"

#include <atomic>
#include <cmath>

using heterour::DgpSpec;
using heterour::mix_seed;
using heterour::TestConfig;

TEST_CASE("bootstrap m-test holds size under one-shift heteroskedasticity") {
    DgpSpec spec;
    spec.c = 0.0;
    spec.vol_case = heterour::VolCase::OneShift;
    spec.sigma0 = 1.0;
    spec.sigma1 = 5.0;
    spec.T = 100;

    TestConfig cfg;
    cfg.B = 499;
    cfg.block = 1;  // i.i.d. errors

    const int reps = 500;
    std::atomic<int> rejections{0};
    heterour::parallel_for(static_cast<std::size_t>(reps), [&](std::size_t j) {
        const std::uint64_t rep_seed = mix_seed(90210, j);
        const auto y = heterour::simulate_series(spec, mix_seed(rep_seed, 0));
        TestConfig local = cfg;
        local.seed = mix_seed(rep_seed, 1);
        const auto res = heterour::abb_m_test(y, local, 0);
        if (res.mz->p_value < 0.05) {
            rejections.fetch_add(1, std::memory_order_relaxed);
        }
    });
    const double size = static_cast<double>(rejections.load()) / reps;
    MESSAGE("abb m-test empirical size: ", size);
    CHECK(size >= 0.02);
    CHECK(size <= 0.10);
}

TEST_CASE("volatility smoothing error shrinks with the sample size") {
    // two-shift profile, normal errors scaled to unit mean absolute value
    const double scale = std::sqrt(3.141592653589793 / 2.0);
    int improved = 0;
    const int reps = 10;
    for (int rep = 0; rep < reps; ++rep) {
        double mse[2] = {0.0, 0.0};
        int which = 0;
        for (int T : {200, 800}) {
            const auto sigma =
                heterour::volatility_profile(heterour::VolCase::TwoShifts, 1.0, 4.0, T);
            heterour::Rng rng(mix_seed(31415, static_cast<std::uint64_t>(rep * 2 + which)));
            std::vector<double> abs_u(static_cast<std::size_t>(T));
            for (int t = 0; t < T; ++t) {
                abs_u[static_cast<std::size_t>(t)] =
                    std::fabs(sigma[static_cast<std::size_t>(t)] * scale * rng.normal());
            }
            const heterour::KernelSpec kernel{heterour::KernelKind::Gaussian};
            const double h = heterour::cv_bandwidth(
                abs_u, kernel, heterour::default_bandwidth_grid(abs_u.size()));
            const auto est = heterour::estimate_volatility(abs_u, h, kernel);
            for (int t = 0; t < T; ++t) {
                const double d =
                    est.sigma_hat[static_cast<std::size_t>(t)] - sigma[static_cast<std::size_t>(t)];
                mse[which] += d * d;
            }
            mse[which] /= static_cast<double>(T);
            ++which;
        }
        improved += mse[1] < mse[0] ? 1 : 0;
    }
    CHECK(improved >= 8);
}
