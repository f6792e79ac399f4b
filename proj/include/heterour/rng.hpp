#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace heterour {

/**
 * @brief Derive an independent stream seed from a master seed.
 *
 * splitmix64 finalizer over master + golden-ratio stride; replicate j of a
 * parallel experiment uses mix_seed(master, j) so results are independent of
 * scheduling and thread count.
 */
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t master,
                                               std::uint64_t stream) noexcept {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * @brief Deterministic random source.
 *
 * Wraps std::mt19937_64 (bit-exact across platforms) with hand-rolled
 * variate transforms, since the standard <random> distributions are
 * implementation-defined and would break byte-identical output guarantees.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    [[nodiscard]] double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1].
    [[nodiscard]] double uniform01_open_low() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer on [0, bound). Masked rejection, exactly uniform.
    [[nodiscard]] std::uint64_t uniform_below(std::uint64_t bound) {
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t x = engine_() & mask;
            if (x < bound) {
                return x;
            }
        }
    }

    /// Standard normal via Box-Muller; consumes two engine draws per variate.
    [[nodiscard]] double normal() {
        const double u1 = uniform01_open_low();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Standard double exponential (Laplace), density 0.5*exp(-|x|).
    [[nodiscard]] double laplace() {
        const double u = uniform01() - 0.5;
        const double a = std::fabs(u);
        const double mag = -std::log1p(-2.0 * a);
        return u >= 0.0 ? mag : -mag;
    }

    /// Student-t with 3 degrees of freedom: z / sqrt(chi2_3 / 3).
    [[nodiscard]] double student_t3() {
        const double z = normal();
        const double a = normal();
        const double b = normal();
        const double c = normal();
        const double chi2 = a * a + b * b + c * c;
        return z / std::sqrt(chi2 / 3.0);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace heterour
