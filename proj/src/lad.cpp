#include "heterour/lad.hpp"

#include <algorithm>
#include <cmath>

namespace heterour {

namespace {

// Lagged regressors below this magnitude contribute gamma-constant terms.
constexpr double kLagFloor = 1e-30;

void check_args(const TimeSeries& y, std::size_t lag_start) {
    y.require_statistical_length();
    if (lag_start != 1 && lag_start != 2) {
        throw InvalidInput("lag_start must be 1 or 2");
    }
}

// y_{t-1} with the y_0 := 0 convention; t is 1-based.
inline double lagged(const TimeSeries& y, std::size_t t) {
    return t >= 2 ? y[t - 2] : 0.0;
}

}  // namespace

LadFit lad_fit(const TimeSeries& y, std::size_t lag_start) {
    check_args(y, lag_start);
    const std::size_t T = y.size();

    struct Point {
        double breakpoint;
        double weight;
    };
    std::vector<Point> points;
    points.reserve(T);
    double total_weight = 0.0;
    for (std::size_t t = lag_start; t <= T; ++t) {
        const double lag = lagged(y, t);
        if (std::fabs(lag) < kLagFloor) {
            continue;
        }
        points.push_back({y[t - 1] / lag, std::fabs(lag)});
        total_weight += std::fabs(lag);
    }
    if (points.empty()) {
        throw AllLagsZero("all lagged values are zero; gamma is unidentified");
    }

    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.breakpoint < b.breakpoint; });

    // Weighted median: first breakpoint where cumulative weight reaches half
    // the total. Exact half means the objective is flat up to the next
    // breakpoint; return the interval midpoint.
    const double half = total_weight / 2.0;
    double gamma = points.back().breakpoint;
    double cum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        cum += points[i].weight;
        if (cum > half) {
            gamma = points[i].breakpoint;
            break;
        }
        if (cum == half) {
            gamma = i + 1 < points.size()
                        ? 0.5 * (points[i].breakpoint + points[i + 1].breakpoint)
                        : points[i].breakpoint;
            break;
        }
    }

    LadFit fit;
    fit.gamma_hat = gamma;
    fit.t_range = {lag_start, T};
    fit.residuals.reserve(T - lag_start + 1);
    double objective = 0.0;
    for (std::size_t t = lag_start; t <= T; ++t) {
        const double r = y[t - 1] - gamma * lagged(y, t);
        fit.residuals.push_back(r);
        objective += std::fabs(r);
    }
    fit.objective = objective;
    return fit;
}

double lad_objective(const TimeSeries& y, double gamma, std::size_t lag_start) {
    check_args(y, lag_start);
    double objective = 0.0;
    for (std::size_t t = lag_start; t <= y.size(); ++t) {
        objective += std::fabs(y[t - 1] - gamma * lagged(y, t));
    }
    return objective;
}

}  // namespace heterour
