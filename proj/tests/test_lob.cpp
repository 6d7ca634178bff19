#include <doctest.h>

#include <algorithm>
#include <random>

#include "mqkit/lob.hpp"
#include "support.hpp"

using namespace mq;
using lob::Level;
using lob::LobSnapshot;

namespace {

const Pair pair = Pair::parse("ETH-USDC");

LobSnapshot book(std::vector<Level> bids, std::vector<Level> asks) {
    return LobSnapshot(pair, HourStamp{0}, std::move(bids), std::move(asks));
}

LobSnapshot random_book(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> depth(1, 30);
    std::uniform_real_distribution<double> step(1e-4, 1e-2);
    const double mid = test::log_uniform(rng, 1e-3, 1e5);
    const double half = mid * step(rng);
    std::vector<Level> bids, asks;
    double b = mid - half, a = mid + half;
    for (int k = depth(rng); k > 0; --k) {
        bids.push_back({b, test::log_uniform(rng, 1e-2, 1e3)});
        b *= 1.0 - step(rng);
    }
    for (int k = depth(rng); k > 0; --k) {
        asks.push_back({a, test::log_uniform(rng, 1e-2, 1e3)});
        a *= 1.0 + step(rng);
    }
    return book(bids, asks);
}

double depth_of(const std::vector<Level>& side) {
    double v = 0;
    for (const auto& l : side) v += l.volume;
    return v;
}

}  // namespace

TEST_CASE("volume-weighted bid") {
    CHECK(lob::vw_bid(book({{99, 10}}, {{100, 10}}), 10).vw_price.value() == 99);
    const auto r = lob::vw_bid(book({{99, 5}, {98, 10}}, {{100, 10}}), 10);
    CHECK(r.vw_price.value() == doctest::Approx(98.5));
    CHECK(r.levels_consumed == 2);
    CHECK(r.consumed[1].volume == doctest::Approx(5));
    try {
        lob::vw_bid(book({{99, 4}, {98, 6}}, {{100, 10}}), 11);
        FAIL("expected depth error");
    } catch (const depth_error& e) {
        CHECK(e.available == doctest::Approx(10));
    }
}

TEST_CASE("volume-weighted ask") {
    const auto b = book({{99, 5}, {98, 10}}, {{100, 5}, {101, 10}});
    CHECK(lob::vw_ask(b, 10).vw_price.value() == doctest::Approx(100.5));
    CHECK(lob::vw_ask(book({{99, 1}}, {{100, 10}}), 10).vw_price.value() == 100);
    CHECK_THROWS_AS(lob::vw_ask(b, 16), depth_error);
    CHECK_THROWS_AS(lob::vw_ask(b, 0.0), domain_error);
    CHECK(lob::vw_ask(b, 10).side == lob::Side::buy);
}

TEST_CASE("spread and mid") {
    const auto b = book({{99, 5}, {98, 10}}, {{100, 5}, {101, 10}});
    // A=100.5 from the asks, B=99 from a single deep bid
    const auto b2 = book({{99, 10}}, {{100, 5}, {101, 10}});
    CHECK(lob::spread_lob(b2, 10).value() == doctest::Approx(75.18796992481202).epsilon(1e-12));
    CHECK(lob::spread_lob(b, 1e-9).value() > 0.0);
    CHECK(lob::mid_price(b).value() == 99.5);

    // a better-priced level never widens the spread
    const auto deeper = book({{99.5, 3}, {99, 5}, {98, 10}}, {{100, 5}, {101, 10}});
    CHECK(lob::spread_lob(deeper, 10).value() <= lob::spread_lob(b, 10).value());

    CHECK_THROWS_AS(lob::mid_price(book({}, {{100, 1}})), lob::empty_book_error);
    CHECK_THROWS_AS(lob::mid_price(book({{99, 1}}, {})), lob::empty_book_error);
}

TEST_CASE("book validation") {
    CHECK_THROWS_AS(book({{100, 1}}, {{100, 1}}), domain_error);
    CHECK_THROWS_AS(book({{101, 1}}, {{100, 1}}), domain_error);
    CHECK_THROWS_AS(book({{98, 1}, {99, 1}}, {{100, 1}}), domain_error);
    CHECK_THROWS_AS(book({{99, 0}}, {{100, 1}}), domain_error);
    const auto sorted = LobSnapshot::from_unsorted(pair, HourStamp{0}, {{98, 1}, {99, 1}},
                                                   {{102, 1}, {100, 1}});
    CHECK(sorted.bids().front().price == 99);
    CHECK(sorted.asks().front().price == 100);
}

TEST_CASE("randomized book properties") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto b = random_book(rng);
        const double mid = lob::mid_price(b).value();
        CHECK(b.bids().front().price < mid);
        CHECK(mid < b.asks().front().price);
        const double cap = std::min(depth_of(b.bids()), depth_of(b.asks()));
        std::vector<double> sizes;
        for (int k = 0; k < 8; ++k) sizes.push_back(cap * u(rng));
        std::sort(sizes.begin(), sizes.end());
        double last_bid = 1e300, last_ask = 0, last_spread = 0;
        for (double dx : sizes) {
            if (dx <= 0) continue;
            const auto bid = lob::vw_bid(b, dx);
            const auto ask = lob::vw_ask(b, dx);
            CHECK(bid.vw_price.value() <= last_bid);
            CHECK(ask.vw_price.value() >= last_ask);
            CHECK(bid.vw_price.value() <= mid);
            CHECK(ask.vw_price.value() >= mid);
            const double s = lob::spread_lob(b, dx).value();
            CHECK(s >= last_spread * (1 - 1e-12));
            last_bid = bid.vw_price.value();
            last_ask = ask.vw_price.value();
            last_spread = s;
            double taken = 0;
            for (const auto& l : ask.consumed) taken += l.volume;
            CHECK(test::rel_close(taken, dx, 1e-12));
        }
    }
}
