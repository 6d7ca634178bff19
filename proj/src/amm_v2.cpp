#include "mqkit/amm_v2.hpp"

#include <cmath>

namespace mq::v2 {

namespace {

void require_input(double dx) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw domain_error("swap input must be positive");
}

}  // namespace

PoolState::PoolState(Pair pair, double x, double y, double fee)
    : pair(std::move(pair)), x(x), y(y), fee(fee) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw domain_error("pool reserves must be positive");
    if (!(fee >= 0.0 && fee < 1.0)) throw domain_error("pool fee must lie in [0, 1)");
}

PoolState PoolState::reversed() const {
    PoolState r(pair.reversed(), y, x, fee);
    r.fees_x = fees_y;
    r.fees_y = fees_x;
    return r;
}

Price quoted_price(const PoolState& pool) { return Price(pool.y / pool.x); }

double amount_out(const PoolState& pool, double dx) {
    require_input(dx);
    const double net = pool.phi() * dx;
    return pool.y * net / (pool.x + net);
}

SwapResult execute_swap(const PoolState& pool, double dx) {
    require_input(dx);
    const double net = pool.phi() * dx;
    const double new_x = pool.x + net;
    // y * x / (x + net) rather than y - dy keeps the product exact to rounding.
    const double new_y = pool.y * pool.x / new_x;
    const double dy = pool.y * net / new_x;

    PoolState next = pool;
    next.x = new_x;
    next.y = new_y;
    next.fees_x += dx - net;
    return {dx, dy, Price(pool.y / new_x), next};
}

Bps half_spread(const PoolState& pool, double dx) {
    require_input(dx);
    const double net = pool.phi() * dx;
    return Bps::from_fraction(net / (pool.x + net));
}

Bps ba_spread(const PoolState& pool, double usd_size, Price usd_price_x, Price usd_price_y) {
    const double dx = usd_to_token_amount(usd_price_x, usd_size);
    const double dy = usd_to_token_amount(usd_price_y, usd_size);
    const double sell_x = half_spread(pool, dx).value();
    const double sell_y = half_spread(pool.reversed(), dy).value();
    return Bps(0.5 * (sell_x + sell_y));
}

ImpermanentLoss impermanent_loss(double delta_p, IlMode mode) {
    if (!(delta_p > 0.0) || !std::isfinite(delta_p))
        throw domain_error("gross price change must be positive");
    const double r_lp = std::sqrt(delta_p);
    const double r_h = 0.5 * (delta_p + 1.0);
    // r_h - r_lp == (sqrt(dP) - 1)^2 / 2, written without cancellation near dP = 1.
    const double gap = (delta_p - 1.0) / (r_lp + 1.0);
    const double loss = 0.5 * gap * gap;
    // r_lp / r_h - 1 == -loss / r_h
    const double il = mode == IlMode::difference ? loss : -loss / r_h;
    return {il, r_lp, r_h};
}

}  // namespace mq::v2
