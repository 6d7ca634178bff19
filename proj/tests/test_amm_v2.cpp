#include <doctest.h>

#include <random>

#include "mqkit/amm_v2.hpp"
#include "support.hpp"

using namespace mq;
using mq::test::rel_close;

namespace {

v2::PoolState pool(double x, double y, double fee) {
    return v2::PoolState(Pair::parse("ETH-USDC"), x, y, fee);
}

}  // namespace

TEST_CASE("quoted price") {
    CHECK(v2::quoted_price(pool(1000, 1000, 0.003)).value() == 1.0);
    CHECK(v2::quoted_price(pool(100, 200, 0.003)).value() == 2.0);
    const auto p = v2::quoted_price(pool(200, 100, 0.003));
    CHECK(p.value() == 0.5);
    CHECK(p.inverse().value() == 2.0);
    CHECK(v2::quoted_price(pool(200, 100, 0.003).reversed()).value() == 2.0);
}

TEST_CASE("amount out") {
    CHECK(v2::amount_out(pool(1000, 1000, 0.003), 100) == doctest::Approx(90.66108938801491).epsilon(1e-12));
    CHECK(v2::amount_out(pool(1000, 1000, 0.003), 1e-12) < 1e-11);
    CHECK(v2::amount_out(pool(1000, 1000, 0.0), 1000) == doctest::Approx(500.0).epsilon(1e-15));
    CHECK_THROWS_AS(v2::amount_out(pool(1000, 1000, 0.003), 0.0), domain_error);
    CHECK_THROWS_AS(v2::amount_out(pool(1000, 1000, 0.003), -1.0), domain_error);
}

TEST_CASE("execute swap") {
    const auto r = v2::execute_swap(pool(1000, 1000, 0.003), 100);
    CHECK(r.new_state.x == doctest::Approx(1099.7).epsilon(1e-14));
    CHECK(r.new_state.y == doctest::Approx(909.338910611985).epsilon(1e-12));
    CHECK(rel_close(r.new_state.x * r.new_state.y, 1e6, 1e-6));
    CHECK(r.amount_out < 1000.0);
    CHECK(r.transaction_price.value() < 1.0);
    CHECK(r.transaction_price.value() == doctest::Approx(r.amount_out / (0.997 * 100)));
    // fee proceeds sit outside the reserves
    CHECK(r.new_state.fees_x == doctest::Approx(0.3));
    CHECK(r.new_state.fees_y == 0.0);

    // a vanishing trade leaves the pool where it was
    const auto tiny = v2::execute_swap(pool(1000, 1000, 0.0), 1e-300);
    CHECK(tiny.new_state.x == 1000.0);
    CHECK(tiny.new_state.y == 1000.0);
    CHECK_THROWS_AS(v2::execute_swap(pool(1000, 1000, 0.0), 0.0), domain_error);
}

TEST_CASE("two swaps compose into one without fees") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto p = pool(test::log_uniform(rng, 1, 1e7), test::log_uniform(rng, 1, 1e7), 0.0);
        const double d1 = test::log_uniform(rng, 1e-4, 10) * p.x;
        const double d2 = test::log_uniform(rng, 1e-4, 10) * p.x;
        const auto a = v2::execute_swap(p, d1);
        const auto b = v2::execute_swap(a.new_state, d2);
        const auto c = v2::execute_swap(p, d1 + d2);
        CHECK(rel_close(a.amount_out + b.amount_out, c.amount_out, 1e-12));
        CHECK(rel_close(b.new_state.y, c.new_state.y, 1e-12));
    }
}

TEST_CASE("half spread") {
    CHECK(v2::half_spread(pool(1000, 1000, 0.003), 100).value() ==
          doctest::Approx(906.6108938801491).epsilon(1e-12));
    CHECK(v2::half_spread(pool(1000, 1000, 0.003), 1e-9).value() < 1e-7);
    CHECK(v2::half_spread(pool(1000, 1000, 0.0), 1000).value() == doctest::Approx(5000.0));
}

TEST_CASE("ba spread averages both directions") {
    const auto sym = pool(1000, 1000, 0.0);
    const double one_side = v2::half_spread(sym, 100).value();
    CHECK(v2::ba_spread(sym, 100, Price(1), Price(1)).value() == doctest::Approx(one_side));

    // x=100, y=10000 with X worth 50 USD: selling X moves 20 units (1/6), selling
    // Y moves 1000 units (1/11); the mean is 17/132.
    const auto asym = pool(100, 10000, 0.0);
    const double s = v2::ba_spread(asym, 1000, Price(50), Price(1)).value();
    CHECK(v2::half_spread(asym, 20).value() == doctest::Approx(1e4 / 6));
    CHECK(v2::half_spread(asym.reversed(), 1000).value() == doctest::Approx(1e4 / 11));
    CHECK(s == doctest::Approx(17.0 / 132.0 * 1e4).epsilon(1e-12));

    CHECK(v2::ba_spread(sym, 1e-9, Price(1), Price(1)).value() < 1e-7);
}

TEST_CASE("impermanent loss v2") {
    const auto flat = v2::impermanent_loss(1.0);
    CHECK(flat.il == 0.0);
    const auto four = v2::impermanent_loss(4.0);
    CHECK(four.r_lp == 2.0);
    CHECK(four.r_h == 2.5);
    CHECK(four.il == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v2::impermanent_loss(0.25).il == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(v2::impermanent_loss(4.0, v2::IlMode::percentage).il == doctest::Approx(-0.2));
    CHECK(v2::impermanent_loss(1.0, v2::IlMode::percentage).il == 0.0);
    CHECK_THROWS_AS(v2::impermanent_loss(0.0), domain_error);
    CHECK_THROWS_AS(v2::impermanent_loss(-2.0), domain_error);
}

TEST_CASE("constant-product properties") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> fee(0.0, 0.05);
    for (int i = 0; i < 10'000; ++i) {
        const auto p = pool(test::log_uniform(rng, 1e-3, 1e9), test::log_uniform(rng, 1e-3, 1e9),
                            fee(rng));
        const double dx = test::log_uniform(rng, 1e-6, 10) * p.x;
        const auto r = v2::execute_swap(p, dx);
        // invariance
        CHECK(rel_close((p.x + p.phi() * dx) * (p.y - r.amount_out), p.x * p.y, 1e-12));
        CHECK(rel_close(r.new_state.k(), p.k(), 1e-12));
        // transaction price below quoted
        CHECK(r.transaction_price < v2::quoted_price(p));

        // spread increasing and concave: second difference <= 0
        const double h = dx * 0.25;
        const double s0 = v2::half_spread(p, dx).value();
        const double s1 = v2::half_spread(p, dx + h).value();
        const double s2 = v2::half_spread(p, dx + 2 * h).value();
        CHECK(s1 > s0);
        CHECK(s2 - 2 * s1 + s0 <= 1e-9 * s2);
    }
}

TEST_CASE("transaction price converges to quoted price") {
    const auto p = pool(5000, 1e7, 0.003);
    const double quoted = v2::quoted_price(p).value();
    double prev_gap = 1.0;
    for (double dx : {100.0, 1.0, 1e-2, 1e-4, 1e-6}) {
        const double gap = (quoted - v2::execute_swap(p, dx).transaction_price.value()) / quoted;
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-9);
}

TEST_CASE("fee-free round trip returns the input") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto p = pool(test::log_uniform(rng, 1, 1e8), test::log_uniform(rng, 1, 1e8), 0.0);
        const double dx = test::log_uniform(rng, 1e-6, 5) * p.x;
        const auto there = v2::execute_swap(p, dx);
        const auto back = v2::execute_swap(there.new_state.reversed(), there.amount_out);
        CHECK(rel_close(back.amount_out, dx, 1e-9));
    }
}

TEST_CASE("impermanent loss is positive away from one") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10'000; ++i) {
        const double dp = test::log_uniform(rng, 1e-4, 1e4);
        if (dp == 1.0) continue;
        CHECK(v2::impermanent_loss(dp).il > 0.0);
        CHECK(v2::impermanent_loss(1.0 / dp).il > 0.0);
    }
    CHECK(v2::impermanent_loss(std::nextafter(1.0, 2.0)).il > 0.0);
}
