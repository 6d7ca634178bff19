#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mqkit/errors.hpp"

namespace mq::eq {

struct fit_error : domain_error {
    using domain_error::domain_error;
};

struct undefined_equilibrium_error : domain_error {
    using domain_error::domain_error;
};

struct DailyPoint {
    std::int64_t day;
    double volume;     // traded volume in units of X
    double il;         // realized impermanent loss of the day
    double liquidity;  // observed liquidity in units of X
};

struct PairDailySeries {
    explicit PairDailySeries(std::vector<DailyPoint> points);

    std::vector<DailyPoint> points;
};

// Realized IL of a day from its open and close prices.
double daily_il(double open_price, double close_price);

struct Expectations {
    double volume;
    double il;
};

// Trailing means over the `window_days` days before each day, excluding the day
// itself. Empty for the first window_days days.
std::vector<std::optional<Expectations>> expected_stats(const PairDailySeries& series,
                                                        std::size_t window_days = 14);

// x* = f E[V] / E[IL]
double predicted_liquidity(double fee, double expected_volume, double expected_il);

struct FitReport {
    double slope;
    double intercept;
    double r_squared;
    std::size_t n_observations;
};

// OLS of log(observed) on log(predicted). Non-finite predictions are dropped
// together with their observation.
FitReport model_fit(std::span<const double> observed, std::span<const double> predicted);

}  // namespace mq::eq
