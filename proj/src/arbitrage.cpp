#include "mqkit/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace mq::arb {

namespace {

// Price of `leg` from a quote on `quoted`, inverting when the orientation differs.
std::optional<double> orient(const Pair& leg, const Pair& quoted, double price) {
    if (quoted == leg) return price;
    if (quoted == leg.reversed()) return 1.0 / price;
    return std::nullopt;
}

template <typename Quotes>
TripletQuoteSeries assemble(const Triplet& triplet, std::string exchange, const Quotes& quotes) {
    // stamp -> leg prices
    std::map<HourStamp, std::array<std::optional<double>, 3>> by_hour;
    for (const auto& [stamp, pair, price] : quotes) {
        for (std::size_t k = 0; k < 3; ++k)
            if (auto p = orient(triplet.legs()[k], pair, price)) by_hour[stamp][k] = *p;
    }
    std::vector<QuotePoint> points;
    for (const auto& [stamp, legs] : by_hour)
        if (legs[0] && legs[1] && legs[2]) points.push_back({stamp, *legs[0], *legs[1], *legs[2]});
    return TripletQuoteSeries(triplet, std::move(exchange), std::move(points));
}

}  // namespace

Triplet::Triplet(std::array<Pair, 3> legs) : legs_(std::move(legs)) {
    for (std::size_t k = 0; k < 3; ++k)
        if (!(legs_[k].quote == legs_[(k + 1) % 3].base))
            throw triplet_error("triplet legs do not close a cycle: " + name());
}

Triplet Triplet::of(const std::string& x, const std::string& y, const std::string& z,
                    std::string_view native_symbol) {
    return Triplet({Pair::parse(x + "-" + y, native_symbol), Pair::parse(y + "-" + z, native_symbol),
                    Pair::parse(z + "-" + x, native_symbol)});
}

std::string Triplet::name() const {
    return legs_[0].base.symbol + "-" + legs_[1].base.symbol + "-" + legs_[2].base.symbol;
}

TripletQuoteSeries::TripletQuoteSeries(Triplet triplet, std::string exchange,
                                       std::vector<QuotePoint> points)
    : triplet(std::move(triplet)), exchange(std::move(exchange)), points(std::move(points)) {
    for (std::size_t i = 0; i < this->points.size(); ++i) {
        const QuotePoint& p = this->points[i];
        if (!(p.p_xy > 0.0) || !(p.p_yz > 0.0) || !(p.p_zx > 0.0))
            throw domain_error("triplet quotes must be positive");
        if (i > 0 && !(this->points[i - 1].stamp < p.stamp))
            throw domain_error("triplet quote stamps must be strictly increasing");
    }
}

double theta(Price p_xy, Price p_yz, Price p_zx) {
    return p_xy.value() * p_yz.value() * p_zx.value() - 1.0;
}

TripletQuoteSeries quotes_from_books(const Triplet& triplet, std::string exchange,
                                     std::span<const lob::LobSnapshot> books) {
    std::vector<std::tuple<HourStamp, Pair, double>> quotes;
    for (const auto& b : books)
        if (!b.bids().empty() && !b.asks().empty())
            quotes.emplace_back(b.stamp(), b.pair(), lob::mid_price(b).value());
    return assemble(triplet, std::move(exchange), quotes);
}

TripletQuoteSeries quotes_from_pools(const Triplet& triplet, std::string exchange,
                                     std::span<const std::pair<HourStamp, v2::PoolState>> pools) {
    std::vector<std::tuple<HourStamp, Pair, double>> quotes;
    for (const auto& [stamp, pool] : pools)
        quotes.emplace_back(stamp, pool.pair, v2::quoted_price(pool).value());
    return assemble(triplet, std::move(exchange), quotes);
}

TripletQuoteSeries quotes_from_pools(const Triplet& triplet, std::string exchange,
                                     std::span<const std::pair<HourStamp, v3::PoolState>> pools) {
    std::vector<std::tuple<HourStamp, Pair, double>> quotes;
    for (const auto& [stamp, pool] : pools)
        quotes.emplace_back(stamp, pool.pair, pool.current_price.value());
    return assemble(triplet, std::move(exchange), quotes);
}

DeviationSeries deviation_series(const TripletQuoteSeries& src, PriceSource source) {
    DeviationSeries out{src.exchange, source, {}};
    out.points.reserve(src.points.size());
    for (const QuotePoint& p : src.points)
        out.points.push_back({p.stamp, theta(Price(p.p_xy), Price(p.p_yz), Price(p.p_zx))});
    return out;
}

std::vector<CombinedPoint> min_abs_combine(std::span<const DeviationSeries> series) {
    std::map<HourStamp, CombinedPoint> best;
    for (const DeviationSeries& s : series) {
        for (const DeviationPoint& p : s.points) {
            auto [it, inserted] = best.try_emplace(p.stamp, CombinedPoint{p.stamp, p.theta, s.label});
            if (!inserted && std::abs(p.theta) < std::abs(it->second.theta))
                it->second = {p.stamp, p.theta, s.label};
        }
    }
    std::vector<CombinedPoint> out;
    out.reserve(best.size());
    for (auto& [stamp, point] : best) out.push_back(std::move(point));
    return out;
}

double nearest_rank(std::vector<double> values, double q) {
    if (values.empty()) throw domain_error("quantile of an empty sample");
    const auto n = values.size();
    // 0.9 * 70 evaluates to 63.00000000000001; snap products that are integers up to rounding
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, n);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                     values.end());
    return values[rank - 1];
}

std::vector<BandPoint> rolling_top_decile(std::span<const DeviationPoint> series,
                                          std::int64_t window_hours) {
    if (window_hours < 1) throw domain_error("window must be at least one hour");
    std::vector<BandPoint> out;
    out.reserve(series.size());
    std::deque<DeviationPoint> window;
    for (const DeviationPoint& p : series) {
        window.push_back(p);
        while (window.front().stamp.epoch_hour <= p.stamp.epoch_hour - window_hours)
            window.pop_front();
        BandPoint band{p.stamp, std::nullopt};
        if (window.size() >= min_band_points) {
            std::vector<double> abs_values;
            abs_values.reserve(window.size());
            for (const auto& w : window) abs_values.push_back(std::abs(w.theta));
            band.top_decile = nearest_rank(std::move(abs_values), 0.9);
        }
        out.push_back(band);
    }
    return out;
}

}  // namespace mq::arb
