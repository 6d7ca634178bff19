#include "mqkit/amm_v3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mq::v3 {

FeeTier fee_tier_from_bps(int bps) {
    switch (bps) {
        case 1: return FeeTier::bps1;
        case 5: return FeeTier::bps5;
        case 30: return FeeTier::bps30;
        case 100: return FeeTier::bps100;
        default: throw domain_error("fee tier must be one of 1, 5, 30, 100 bps, got " +
                                    std::to_string(bps));
    }
}

TickGrid::TickGrid(std::vector<double> boundaries) : bounds_(std::move(boundaries)) {
    if (bounds_.size() < 2) throw domain_error("tick grid needs at least two boundaries");
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (!(bounds_[i] > 0.0) || !std::isfinite(bounds_[i]))
            throw domain_error("tick boundaries must be positive and finite");
        if (i > 0 && !(bounds_[i - 1] < bounds_[i]))
            throw domain_error("tick boundaries must be strictly increasing");
    }
}

TickGrid TickGrid::geometric(double center_price, FeeTier tier, int intervals_each_side,
                             double base) {
    if (!(center_price > 0.0) || !(base > 1.0) || intervals_each_side < 0)
        throw domain_error("invalid geometric grid parameters");
    int spacing = 1;
    switch (tier) {
        case FeeTier::bps1: spacing = 1; break;
        case FeeTier::bps5: spacing = 10; break;
        case FeeTier::bps30: spacing = 60; break;
        case FeeTier::bps100: spacing = 200; break;
    }
    const auto center_tick = static_cast<long long>(
        std::floor(std::log(center_price) / std::log(base) / spacing) * spacing);
    std::vector<double> bounds;
    for (long long j = -intervals_each_side; j <= intervals_each_side + 1; ++j)
        bounds.push_back(std::pow(base, static_cast<double>(center_tick + j * spacing)));
    return TickGrid(std::move(bounds));
}

TickGrid TickGrid::full_range() { return TickGrid({1e-300, 1e300}); }

std::optional<std::size_t> TickGrid::locate(double price) const {
    if (!(price >= bounds_.front() && price <= bounds_.back())) return std::nullopt;
    if (price == bounds_.front()) return 0;
    // first boundary >= price is the upper end of the containing interval
    auto it = std::lower_bound(bounds_.begin(), bounds_.end(), price);
    return static_cast<std::size_t>(it - bounds_.begin()) - 1;
}

TickGrid TickGrid::inverted() const {
    std::vector<double> inv(bounds_.rbegin(), bounds_.rend());
    for (double& b : inv) b = 1.0 / b;
    return TickGrid(std::move(inv));
}

PoolState::PoolState(Pair pair, FeeTier fee_tier, TickGrid grid, std::vector<double> liquidity,
                     Price current_price)
    : pair(std::move(pair)),
      fee_tier(fee_tier),
      grid(std::move(grid)),
      liquidity(std::move(liquidity)),
      current_price(current_price) {
    if (this->liquidity.size() != this->grid.interval_count())
        throw domain_error("need one liquidity value per tick interval");
    for (double l : this->liquidity)
        if (!(l >= 0.0) || !std::isfinite(l)) throw domain_error("liquidity must be non-negative");
    if (!this->grid.locate(current_price.value()))
        throw out_of_range_error("current price outside the tick grid");
}

PoolState PoolState::with_price(Price price) const {
    return PoolState(pair, fee_tier, grid, liquidity, price);
}

PoolState PoolState::inverted() const {
    std::vector<double> liq(liquidity.rbegin(), liquidity.rend());
    return PoolState(pair.reversed(), fee_tier, grid.inverted(), std::move(liq),
                     current_price.inverse());
}

void LiquidityPosition::validate() const {
    if (!(lower < upper)) throw domain_error("position bounds must satisfy lower < upper");
    if (!(real_x >= 0.0) || !(real_y >= 0.0)) throw domain_error("real reserves must be >= 0");
    if (!(share >= 0.0 && share <= 1.0)) throw domain_error("position share must lie in [0, 1]");
}

VirtualReserves virtual_reserves(const LiquidityPosition& position, Price current_price) {
    position.validate();
    const double p = current_price.value();
    const double pa = position.lower.value();
    const double pb = position.upper.value();
    if (p < pa || p > pb) throw out_of_range_error("price outside the position's range");

    constexpr double inf = std::numeric_limits<double>::infinity();
    const double sp = std::sqrt(p);
    const double lx = p < pb ? position.real_x / (1.0 / sp - 1.0 / std::sqrt(pb)) : inf;
    const double ly = p > pa ? position.real_y / (sp - std::sqrt(pa)) : inf;
    const double l = std::min(lx, ly);
    return {l / sp, l * sp, l};
}

RealReserves real_reserves(double liquidity, Price current_price, Price lower, Price upper) {
    if (!(liquidity >= 0.0)) throw domain_error("liquidity must be non-negative");
    const double p = current_price.value();
    if (!(lower < upper)) throw domain_error("position bounds must satisfy lower < upper");
    if (p < lower.value() || p > upper.value())
        throw out_of_range_error("price outside the position's range");
    const double sp = std::sqrt(p);
    return {liquidity * (1.0 / sp - 1.0 / std::sqrt(upper.value())),
            liquidity * (sp - std::sqrt(lower.value()))};
}

IntervalFill swap_within_interval(double liquidity, Price price, double dx, double lower_bound) {
    if (!(liquidity > 0.0)) throw domain_error("interval liquidity must be positive");
    if (!(dx >= 0.0) || !std::isfinite(dx)) throw domain_error("swap input must be >= 0");
    const double p = price.value();
    if (lower_bound > p) throw out_of_range_error("price below the interval's lower bound");
    const double sp = std::sqrt(p);

    if (lower_bound > 0.0) {
        const double s_lo = std::sqrt(lower_bound);
        const double capacity = liquidity * (1.0 / s_lo - 1.0 / sp);
        if (dx >= capacity) {
            // dy = L (sqrt(P) - sqrt(lo)) = capacity * sqrt(P * lo)
            return {capacity, capacity * sp * s_lo, Price(lower_bound), true};
        }
    }
    if (dx == 0.0) return {0.0, 0.0, price, false};

    // 1/sqrt(P') = 1/sqrt(P) + dx/L, and dy = dx * sqrt(P * P').
    const double s_new = 1.0 / (1.0 / sp + dx / liquidity);
    const double p_new = std::max(s_new * s_new, lower_bound);
    return {dx, dx * sp * s_new, Price(p_new), false};
}

double max_input(const PoolState& pool, bool apply_fee) {
    double total = 0.0;
    double start = pool.current_price.value();
    for (std::size_t k = pool.active_interval() + 1; k-- > 0;) {
        const double lo = pool.grid.lower(k);
        total += pool.liquidity[k] * (1.0 / std::sqrt(lo) - 1.0 / std::sqrt(start));
        start = lo;
    }
    return apply_fee ? total / (1.0 - fee_fraction(pool.fee_tier)) : total;
}

SwapResult execute_swap(const PoolState& pool, double dx, bool apply_fee) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw domain_error("swap input must be positive");
    const double net = apply_fee ? dx * (1.0 - fee_fraction(pool.fee_tier)) : dx;

    std::vector<Fill> fills;
    double remaining = net;
    double out = 0.0;
    double p = pool.current_price.value();
    std::size_t k = pool.active_interval();
    for (;;) {
        const double lo = pool.grid.lower(k);
        const double l = pool.liquidity[k];
        if (l > 0.0) {
            const IntervalFill f = swap_within_interval(l, Price(p), remaining, lo);
            if (f.consumed > 0.0) {
                fills.push_back({k, f.consumed, f.amount_out, f.amount_out / f.consumed});
                out += f.amount_out;
            }
            if (!f.reached_boundary) {
                p = f.new_price.value();
                break;
            }
            remaining -= f.consumed;
        }
        p = lo;
        if (remaining <= 0.0) break;
        if (k == 0)
            throw insufficient_liquidity_error("pool " + pool.pair.name() +
                                                   " cannot absorb the requested input",
                                               max_input(pool, apply_fee));
        --k;
    }
    return {dx, net, out, Price(p), std::move(fills), Price(out / net)};
}

Bps half_spread(const PoolState& pool, double dx, bool apply_fee) {
    const SwapResult r = execute_swap(pool, dx, apply_fee);
    const double p = pool.current_price.value();
    const std::size_t active = pool.active_interval();
    // P*net - out accumulated per fill, each term non-negative, so small
    // spreads do not cancel.
    double deficit = 0.0;
    for (const Fill& f : r.fills) {
        const double s = f.interval == active ? p : pool.grid.upper(f.interval);
        const double u = f.amount_in * std::sqrt(s) / pool.liquidity[f.interval];
        deficit += f.amount_in * (p - s) + f.amount_in * s * (u / (1.0 + u));
    }
    return Bps::from_fraction(deficit / (p * r.net_input));
}

Bps ba_spread(const PoolState& pool, double usd_size, Price usd_price_x, Price usd_price_y) {
    const double dx = usd_to_token_amount(usd_price_x, usd_size);
    const double dy = usd_to_token_amount(usd_price_y, usd_size);
    const double sell_x = half_spread(pool, dx).value();
    const double sell_y = half_spread(pool.inverted(), dy).value();
    return Bps(0.5 * (sell_x + sell_y));
}

LeveragedLoss impermanent_loss(double delta_p, Price price, Price lower) {
    if (!(lower < price)) throw domain_error("lower bound must be below the current price");
    const double p = price.value();
    const double pa = lower.value();
    const double p_new = delta_p * p;
    const double upper = p * p / pa;
    if (!(p_new >= pa && p_new <= upper))
        throw out_of_range_error("final price leaves the position's range");
    const double leverage = std::sqrt(p) / (std::sqrt(p) - std::sqrt(pa));
    const double il2 = v2::impermanent_loss(delta_p).il;
    return {leverage * il2, leverage, il2};
}

std::size_t select_cheapest(std::span<const PoolQuote> quotes) {
    if (quotes.empty()) throw domain_error("no pools to choose from");
    auto better = [](const PoolQuote& a, const PoolQuote& b) {
        if (a.cost.total != b.cost.total) return a.cost.total < b.cost.total;
        if (a.fee_bps != b.fee_bps) return a.fee_bps < b.fee_bps;
        return a.id < b.id;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < quotes.size(); ++i)
        if (better(quotes[i], quotes[best])) best = i;
    return best;
}

RouteChoice best_pool(std::span<const PoolState> v3_pools, std::span<const v2::PoolState> v2_pools,
                      double usd_size, double gas_cost_usd, Price usd_price_x, Price usd_price_y,
                      std::optional<double> gas_cost_usd_v2) {
    if (v3_pools.empty() && v2_pools.empty()) throw domain_error("no pools to choose from");
    std::vector<PoolQuote> quotes;
    double max_usd = 0.0;
    for (std::size_t i = 0; i < v3_pools.size(); ++i) {
        const PoolState& pool = v3_pools[i];
        const auto tier = static_cast<double>(to_bps(pool.fee_tier));
        try {
            const Bps spread = ba_spread(pool, usd_size, usd_price_x, usd_price_y);
            quotes.push_back({i, tier,
                              tc_dex(spread, Bps(tier), gas_cost_usd, usd_size,
                                     "uniswap_v3_" + std::to_string(to_bps(pool.fee_tier)) +
                                         "bps")});
        } catch (const insufficient_liquidity_error&) {
            const double sell_x = max_input(pool, false) * usd_price_x.value();
            const double sell_y = max_input(pool.inverted(), false) * usd_price_y.value();
            max_usd = std::max(max_usd, std::min(sell_x, sell_y));
        }
    }
    for (std::size_t j = 0; j < v2_pools.size(); ++j) {
        const v2::PoolState& pool = v2_pools[j];
        const Bps spread = v2::ba_spread(pool, usd_size, usd_price_x, usd_price_y);
        const Bps fee = Bps::from_fraction(pool.fee);
        quotes.push_back({v3_pools.size() + j, fee.value(),
                          tc_dex(spread, fee, gas_cost_usd_v2.value_or(gas_cost_usd), usd_size,
                                 "uniswap_v2")});
    }
    if (quotes.empty())
        throw insufficient_liquidity_error("no pool can absorb a trade of this size", max_usd);
    const PoolQuote& best = quotes[select_cheapest(quotes)];
    return {best.id, best.id >= v3_pools.size(), best.cost};
}

}  // namespace mq::v3
