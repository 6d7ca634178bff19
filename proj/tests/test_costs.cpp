#include <doctest.h>

#include "mqkit/costs.hpp"

using namespace mq;

namespace {

GasPriceSeries flat_gas() {
    return GasPriceSeries({{HourStamp{100}, 50e-9, Price(2000)}, {HourStamp{105}, 80e-9, Price(2500)}});
}

}  // namespace

TEST_CASE("gas schedule defaults") {
    const GasSchedule g;
    CHECK(g.swap_units_v2 == 118'340);
    CHECK(g.swap_units_v3 == 130'889);
    CHECK(g.deposit_units(TokenKind::native) == 21'000);
    CHECK(g.deposit_units(TokenKind::erc20) == 65'000);
    GasSchedule bad;
    bad.transfer_native = 0;
    CHECK_THROWS_AS(bad.validate(), domain_error);
}

TEST_CASE("gas cost in USD") {
    const auto gas = flat_gas();
    CHECK(gas_cost_usd(118'340, HourStamp{100}, gas) == doctest::Approx(11.834).epsilon(1e-12));
    CHECK(gas_cost_usd(65'000, HourStamp{100}, gas) == doctest::Approx(6.5).epsilon(1e-12));
    CHECK(gas_cost_usd(0, HourStamp{100}, gas) == 0.0);
    // latest point at or before the stamp
    CHECK(gas_cost_usd(65'000, HourStamp{104}, gas) == doctest::Approx(6.5));
    CHECK(gas_cost_usd(65'000, HourStamp{200}, gas) == doctest::Approx(65'000 * 80e-9 * 2500));
    CHECK_THROWS_AS(gas_cost_usd(1, HourStamp{99}, gas), coverage_error);
    CHECK_THROWS_AS(GasPriceSeries({{HourStamp{2}, 1e-9, Price(1)}, {HourStamp{2}, 1e-9, Price(1)}}),
                    domain_error);
}

TEST_CASE("withdrawal fee schedule") {
    WithdrawFeeSchedule w;
    w.add("USDC", HourStamp{5}, 17.0);
    w.add("USDC", HourStamp{10}, 20.0);
    CHECK_THROWS_AS(w.add("USDC", HourStamp{8}, 1.0), domain_error);
    CHECK(w.at("USDC", HourStamp{7}) == 17.0);
    CHECK(w.at("USDC", HourStamp{10}) == 20.0);
    CHECK(w.at("USDC", HourStamp{99}) == 20.0);
    CHECK_THROWS_AS(w.at("USDC", HourStamp{4}), coverage_error);
    CHECK_THROWS_AS(w.at("DAI", HourStamp{10}), coverage_error);
    CHECK_THROWS_AS(w.add("DAI", HourStamp{1}, -1.0), domain_error);
}

TEST_CASE("dex cost") {
    const auto c = tc_dex(Bps(0), Bps(30), 30.0, 100'000);
    CHECK(c.settlement.value() == doctest::Approx(3.0));
    CHECK(c.total.value() == doctest::Approx(33.0));
    CHECK(tc_dex(Bps(0), Bps(30), 0.0, 5'000).total.value() == 30.0);
    const auto a = tc_dex(Bps(1), Bps(5), 17.0, 3'000);
    const auto b = tc_dex(Bps(1), Bps(5), 17.0, 6'000);
    CHECK(b.settlement.value() * 2 == a.settlement.value());
    CHECK_THROWS_AS(tc_dex(Bps(0), Bps(30), 1.0, 0.0), domain_error);
}

TEST_CASE("cex cost") {
    // DW is 19.226 bps of 10k USD
    const auto binance = tc_cex(Bps(0.404), Bps(10), 9.613, 9.613, 10'000, "binance");
    CHECK(binance.settlement.value() == doctest::Approx(19.226));
    CHECK(binance.total.value() == doctest::Approx(29.630));
    CHECK(binance.venue == "binance");
    const auto kraken = tc_cex(Bps(321.179), Bps(26), 17.3, 0.0, 1e6);
    CHECK(kraken.total.value() == doctest::Approx(347.352));
    const auto no_dw = tc_cex(Bps(2.5), Bps(26), 0.0, 0.0, 1e3);
    CHECK(no_dw.total.value() == 28.5);
}

TEST_CASE("breakdowns are additive") {
    for (double s : {0.0, 0.404, 17.123456789, 540.8080808}) {
        for (double usd : {1e3, 1e4, 1e5, 1e6, 3.3e6}) {
            const auto d = tc_dex(Bps(s), Bps(5), 13.0888, usd);
            CHECK(d.total.value() - (d.spread.value() + d.exchange_fee.value() + d.settlement.value()) == 0.0);
            const auto c = tc_cex(Bps(s), Bps(26), 1.3, 17.126, usd);
            CHECK(c.total.value() - (c.spread.value() + c.exchange_fee.value() + c.settlement.value()) == 0.0);
            CHECK(c.trade_usd == usd);
        }
    }
}
