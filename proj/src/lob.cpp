#include "mqkit/lob.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mq::lob {

namespace {

void check_levels(const std::vector<Level>& levels, bool descending) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Level& l = levels[i];
        if (!(l.price > 0.0) || !std::isfinite(l.price))
            throw domain_error("level price must be positive");
        if (!(l.volume > 0.0) || !std::isfinite(l.volume))
            throw domain_error("level volume must be positive");
        if (i > 0) {
            const double prev = levels[i - 1].price;
            if (descending ? !(prev > l.price) : !(prev < l.price))
                throw domain_error(descending ? "bids must be sorted by descending price"
                                              : "asks must be sorted by ascending price");
        }
    }
}

FillReport walk(const std::vector<Level>& ladder, double dx, Side side) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw domain_error("order size must be positive");
    FillReport report{side, dx, Price(1.0), 0, {}};
    double remaining = dx;
    double notional = 0.0;
    for (const Level& level : ladder) {
        const double take = std::min(level.volume, remaining);
        report.consumed.push_back({level.price, take});
        notional += take * level.price;
        remaining -= take;
        if (remaining <= 0.0) break;
    }
    if (remaining > 0.0)
        throw depth_error(std::string(side == Side::buy ? "ask" : "bid") +
                              " depth insufficient for the order size",
                          dx - remaining);
    report.levels_consumed = report.consumed.size();
    // clamp guards against rounding pushing the average outside the consumed range
    const double lo = std::min(report.consumed.front().price, report.consumed.back().price);
    const double hi = std::max(report.consumed.front().price, report.consumed.back().price);
    report.vw_price = Price(std::clamp(notional / dx, lo, hi));
    return report;
}

}  // namespace

LobSnapshot::LobSnapshot(Pair pair, HourStamp stamp, std::vector<Level> bids,
                         std::vector<Level> asks)
    : pair_(std::move(pair)), stamp_(stamp), bids_(std::move(bids)), asks_(std::move(asks)) {
    check_levels(bids_, true);
    check_levels(asks_, false);
    if (!bids_.empty() && !asks_.empty() && !(bids_.front().price < asks_.front().price))
        throw domain_error("crossed book: best bid " + std::to_string(bids_.front().price) +
                           " >= best ask " + std::to_string(asks_.front().price));
}

LobSnapshot LobSnapshot::from_unsorted(Pair pair, HourStamp stamp, std::vector<Level> bids,
                                       std::vector<Level> asks) {
    std::ranges::sort(bids, [](const Level& a, const Level& b) { return a.price > b.price; });
    std::ranges::sort(asks, [](const Level& a, const Level& b) { return a.price < b.price; });
    return LobSnapshot(std::move(pair), stamp, std::move(bids), std::move(asks));
}

FillReport vw_bid(const LobSnapshot& book, double dx) { return walk(book.bids(), dx, Side::sell); }

FillReport vw_ask(const LobSnapshot& book, double dx) { return walk(book.asks(), dx, Side::buy); }

Bps spread_lob(const LobSnapshot& book, double dx) {
    const double a = vw_ask(book, dx).vw_price.value();
    const double b = vw_bid(book, dx).vw_price.value();
    return Bps::from_fraction((a - b) / (a + b));
}

Price mid_price(const LobSnapshot& book) {
    if (book.bids().empty() || book.asks().empty())
        throw empty_book_error("mid price needs both sides of the book");
    return Price(0.5 * (book.bids().front().price + book.asks().front().price));
}

}  // namespace mq::lob
