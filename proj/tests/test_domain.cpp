#include <doctest.h>

#include <random>

#include "mqkit/domain.hpp"
#include "support.hpp"

using namespace mq;

TEST_CASE("usd_to_token_amount") {
    CHECK(usd_to_token_amount(Price(2000.0), 10'000.0) == doctest::Approx(5.0));
    CHECK(usd_to_token_amount(Price(1.0), 1.0) == 1.0);
    CHECK_THROWS_AS(usd_to_token_amount(Price(0.0), 1.0), domain_error);
    CHECK_THROWS_AS(usd_to_token_amount(Price(2.0), 0.0), domain_error);
    CHECK_THROWS_AS(usd_to_token_amount(Price(2.0), -5.0), domain_error);
}

TEST_CASE("usd conversion and price inversion identities") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10'000; ++i) {
        const Price p(test::log_uniform(rng, 1e-8, 1e8));
        const double usd = test::log_uniform(rng, 1e-3, 1e9);
        CHECK(test::rel_close(usd_to_token_amount(p, usd) * p.value(), usd, 1e-12));
        CHECK(test::rel_close(p.value() * p.inverse().value(), 1.0, 1e-12));
    }
}

TEST_CASE("value type invariants") {
    CHECK_THROWS_AS(Token(""), domain_error);
    CHECK_THROWS_AS(Pair(Token("ETH"), Token("ETH")), domain_error);
    CHECK_THROWS_AS(Price(-1.0), domain_error);
    CHECK_THROWS_AS(Price(std::numeric_limits<double>::infinity()), domain_error);
    CHECK_THROWS_AS(Bps(std::nan("")), domain_error);
    CHECK_THROWS_AS(TradeSize(0.0, 1.0), domain_error);

    const Pair p = Pair::parse("ETH-USDC");
    CHECK(p.base.symbol == "ETH");
    CHECK(p.base.kind == TokenKind::native);
    CHECK(p.quote.kind == TokenKind::erc20);
    CHECK(p.name() == "ETH-USDC");
    CHECK(p.reversed().name() == "USDC-ETH");
    CHECK_THROWS_AS(Pair::parse("ETHUSDC"), domain_error);
    CHECK_THROWS_AS(Pair::parse("A-B-C"), domain_error);

    CHECK(Bps::from_fraction(0.0025).value() == doctest::Approx(25.0));
    CHECK(HourStamp{3} < HourStamp{4});
}
