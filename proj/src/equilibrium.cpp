#include "mqkit/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "mqkit/amm_v2.hpp"

namespace mq::eq {

PairDailySeries::PairDailySeries(std::vector<DailyPoint> pts) : points(std::move(pts)) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const DailyPoint& p = points[i];
        if (!(p.volume >= 0.0)) throw domain_error("daily volume must be non-negative");
        if (!(p.il >= 0.0)) throw domain_error("daily IL must be non-negative");
        if (!(p.liquidity > 0.0)) throw domain_error("observed liquidity must be positive");
        if (i > 0 && !(points[i - 1].day < p.day))
            throw domain_error("days must be strictly increasing");
    }
}

double daily_il(double open_price, double close_price) {
    if (!(open_price > 0.0) || !(close_price > 0.0))
        throw domain_error("daily prices must be positive");
    return v2::impermanent_loss(close_price / open_price).il;
}

std::vector<std::optional<Expectations>> expected_stats(const PairDailySeries& series,
                                                        std::size_t window_days) {
    if (window_days < 1) throw domain_error("window must be at least one day");
    const auto& pts = series.points;
    std::vector<std::optional<Expectations>> out(pts.size());
    for (std::size_t i = window_days; i < pts.size(); ++i) {
        double v = 0.0;
        double il = 0.0;
        for (std::size_t j = i - window_days; j < i; ++j) {
            v += pts[j].volume;
            il += pts[j].il;
        }
        const auto n = static_cast<double>(window_days);
        out[i] = Expectations{v / n, il / n};
    }
    return out;
}

double predicted_liquidity(double fee, double expected_volume, double expected_il) {
    if (!(fee >= 0.0) || !(expected_volume >= 0.0))
        throw domain_error("fee and expected volume must be non-negative");
    if (!(expected_il > 0.0))
        throw undefined_equilibrium_error("expected IL must be positive for a finite equilibrium");
    return fee * expected_volume / expected_il;
}

FitReport model_fit(std::span<const double> observed, std::span<const double> predicted) {
    if (observed.size() != predicted.size())
        throw fit_error("observed and predicted series differ in length");
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!std::isfinite(predicted[i])) continue;
        if (!(observed[i] > 0.0) || !(predicted[i] > 0.0))
            throw domain_error("liquidity values must be positive to take logs");
        xs.push_back(std::log(predicted[i]));
        ys.push_back(std::log(observed[i]));
    }
    const std::size_t n = xs.size();
    if (n < 2) throw fit_error("need at least two observations");

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw fit_error("predictor has no variance");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss_res += r * r;
    }
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return {slope, intercept, std::clamp(r2, 0.0, 1.0), n};
}

}  // namespace mq::eq
