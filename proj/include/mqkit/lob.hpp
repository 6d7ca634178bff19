#pragma once

#include <cstddef>
#include <vector>

#include "mqkit/domain.hpp"

namespace mq::lob {

struct Level {
    double price;
    double volume;
};

struct empty_book_error : domain_error {
    using domain_error::domain_error;
};

// Bids sorted by descending price, asks by ascending price. Either side may be
// empty; when both are present the book must not be crossed.
class LobSnapshot {
public:
    LobSnapshot(Pair pair, HourStamp stamp, std::vector<Level> bids, std::vector<Level> asks);

    // Sorts the ladders before validating.
    static LobSnapshot from_unsorted(Pair pair, HourStamp stamp, std::vector<Level> bids,
                                     std::vector<Level> asks);

    const Pair& pair() const { return pair_; }
    HourStamp stamp() const { return stamp_; }
    const std::vector<Level>& bids() const { return bids_; }
    const std::vector<Level>& asks() const { return asks_; }

private:
    Pair pair_;
    HourStamp stamp_;
    std::vector<Level> bids_;
    std::vector<Level> asks_;
};

enum class Side { buy, sell };

struct FillReport {
    Side side;
    double requested;
    Price vw_price;
    std::size_t levels_consumed;
    std::vector<Level> consumed;  // per level volume taken; the last level may be partial
};

// Volume-weighted price of selling dx into the bids.
FillReport vw_bid(const LobSnapshot& book, double dx);
// Volume-weighted price of buying dx from the asks.
FillReport vw_ask(const LobSnapshot& book, double dx);

// (A - B) / (A + B) at size dx.
Bps spread_lob(const LobSnapshot& book, double dx);

Price mid_price(const LobSnapshot& book);

}  // namespace mq::lob
