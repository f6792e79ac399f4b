#include "heterour/gls.hpp"

#include <array>
#include <cmath>

namespace heterour {

namespace {

constexpr double kSingularTol = 1e-12;

// Quasi-differenced scalar regression (Mean case), first row untransformed.
std::vector<double> solve_mean(const TimeSeries& x, double c_bar) {
    const std::size_t T = x.size();
    const double a = c_bar / static_cast<double>(T);
    double sxx = 1.0;        // rho_1 = d_1 = 1
    double sxz = x[0];       // z_1 = x_1
    for (std::size_t t = 2; t <= T; ++t) {
        const double rho = a;                                 // d_t - d_{t-1} + a*d_{t-1}
        const double z = x[t - 1] - x[t - 2] + a * x[t - 2];  // x_t - x_{t-1} + a*x_{t-1}
        sxx += rho * rho;
        sxz += rho * z;
    }
    if (sxx < kSingularTol) {
        throw SingularDesign("quasi-differenced design is singular");
    }
    return {sxz / sxx};
}

// Two-regressor case, d_t = (1, t)'.
std::vector<double> solve_trend(const TimeSeries& x, double c_bar) {
    const std::size_t T = x.size();
    const double a = c_bar / static_cast<double>(T);

    std::array<double, 3> xtx{0.0, 0.0, 0.0};  // upper triangle of 2x2 cross-product
    std::array<double, 2> xtz{0.0, 0.0};

    auto accumulate = [&](double r1, double r2, double z) {
        xtx[0] += r1 * r1;
        xtx[1] += r1 * r2;
        xtx[2] += r2 * r2;
        xtz[0] += r1 * z;
        xtz[1] += r2 * z;
    };

    accumulate(1.0, 1.0, x[0]);  // first row: x_1 on d_1 = (1, 1)'
    for (std::size_t t = 2; t <= T; ++t) {
        const double td = static_cast<double>(t);
        const double r1 = a;                      // Delta(1) + a*1
        const double r2 = 1.0 + a * (td - 1.0);   // Delta(t) + a*(t-1)
        const double z = x[t - 1] - x[t - 2] + a * x[t - 2];
        accumulate(r1, r2, z);
    }

    const double det = xtx[0] * xtx[2] - xtx[1] * xtx[1];
    const double scale = std::max(std::fabs(xtx[0]), std::fabs(xtx[2]));
    if (std::fabs(det) < kSingularTol * scale * scale) {
        throw SingularDesign("quasi-differenced design is singular");
    }
    return {(xtx[2] * xtz[0] - xtx[1] * xtz[1]) / det,
            (xtx[0] * xtz[1] - xtx[1] * xtz[0]) / det};
}

}  // namespace

GlsFit gls_adjust(const TimeSeries& x, const DeterministicSpec& spec) {
    x.require_statistical_length();

    if (spec.kind == DeterministicKind::None) {
        return {{}, x};
    }
    if (!(spec.c_bar > 0.0)) {
        throw InvalidInput("c_bar must be positive");
    }

    std::vector<double> mu = spec.kind == DeterministicKind::Mean
                                 ? solve_mean(x, spec.c_bar)
                                 : solve_trend(x, spec.c_bar);

    std::vector<double> adjusted(x.size());
    for (std::size_t t = 1; t <= x.size(); ++t) {
        double fitted = mu[0];
        if (spec.kind == DeterministicKind::Trend) {
            fitted += mu[1] * static_cast<double>(t);
        }
        adjusted[t - 1] = x[t - 1] - fitted;
    }
    return {std::move(mu), TimeSeries(std::move(adjusted))};
}

}  // namespace heterour
