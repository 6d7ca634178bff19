#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mqkit/amm_v2.hpp"
#include "mqkit/costs.hpp"
#include "mqkit/domain.hpp"

namespace mq::v3 {

enum class FeeTier : int { bps1 = 1, bps5 = 5, bps30 = 30, bps100 = 100 };

// Throws domain_error for anything outside {1, 5, 30, 100}.
FeeTier fee_tier_from_bps(int bps);
inline int to_bps(FeeTier tier) { return static_cast<int>(tier); }
inline double fee_fraction(FeeTier tier) { return to_bps(tier) * 1e-4; }

// Strictly increasing price boundaries b_0 < b_1 < ... < b_n; interval i is
// [b_i, b_{i+1}]. Selling the base token walks towards lower indices.
class TickGrid {
public:
    explicit TickGrid(std::vector<double> boundaries);

    // Boundaries base^(k * spacing) around center_price, with the usual
    // per-tier spacing (1, 10, 60, 200 ticks). For synthetic fixtures.
    static TickGrid geometric(double center_price, FeeTier tier, int intervals_each_side,
                              double base = 1.0001);
    // One interval spanning (almost) the whole positive axis.
    static TickGrid full_range();

    std::size_t interval_count() const { return bounds_.size() - 1; }
    double lower(std::size_t i) const { return bounds_[i]; }
    double upper(std::size_t i) const { return bounds_[i + 1]; }
    const std::vector<double>& boundaries() const { return bounds_; }

    // Interval containing price. A price on an interior boundary belongs to
    // the lower interval.
    std::optional<std::size_t> locate(double price) const;

    TickGrid inverted() const;

private:
    std::vector<double> bounds_;
};

struct PoolState {
    PoolState(Pair pair, FeeTier fee_tier, TickGrid grid, std::vector<double> liquidity,
              Price current_price);

    std::size_t active_interval() const { return *grid.locate(current_price.value()); }
    PoolState with_price(Price price) const;
    // Same pool with base and quote swapped: prices inverted, L unchanged.
    PoolState inverted() const;

    Pair pair;
    FeeTier fee_tier;
    TickGrid grid;
    std::vector<double> liquidity;  // one virtual liquidity value per interval
    Price current_price;
};

struct LiquidityPosition {
    Price lower;
    Price upper;
    double real_x;
    double real_y;
    double share = 1.0;

    void validate() const;
};

struct VirtualReserves {
    double x;
    double y;
    double liquidity;
};

struct RealReserves {
    double x;
    double y;
};

// Virtual reserves of a position at the current price. When the real reserves
// are not in the exact ratio implied by the price, the smaller of the two
// implied liquidities is used and the excess of the other token is idle.
VirtualReserves virtual_reserves(const LiquidityPosition& position, Price current_price);

// Inverse map: real reserves backing liquidity L on [lower, upper] at price.
RealReserves real_reserves(double liquidity, Price current_price, Price lower, Price upper);

struct IntervalFill {
    double consumed;  // input actually used; less than requested when reached_boundary
    double amount_out;
    Price new_price;
    bool reached_boundary;
};

// Sell dx of the base token into a single interval with liquidity L, starting
// at price. lower_bound == 0 means the interval is unbounded below.
IntervalFill swap_within_interval(double liquidity, Price price, double dx,
                                  double lower_bound = 0.0);

struct Fill {
    std::size_t interval;
    double amount_in;
    double amount_out;
    double local_price;
};

struct SwapResult {
    double amount_in;  // gross input
    double net_input;  // input entering the curve after the fee
    double amount_out;
    Price final_price;
    std::vector<Fill> fills;  // zero-liquidity intervals are crossed without a fill
    Price transaction_price;  // amount_out / net_input
};

// Largest gross input the pool can absorb selling the base token.
double max_input(const PoolState& pool, bool apply_fee);

SwapResult execute_swap(const PoolState& pool, double dx, bool apply_fee);

// (P - T) / P for selling dx of the base token.
Bps half_spread(const PoolState& pool, double dx, bool apply_fee = false);

// Mean of both directional half-spreads for the same dollar notional.
Bps ba_spread(const PoolState& pool, double usd_size, Price usd_price_x, Price usd_price_y);

struct LeveragedLoss {
    double il;
    double leverage;
    double il_v2;
};

// Loss of a position centred (geometrically) on price with lower bound
// `lower`, assuming the final price stays inside the position.
LeveragedLoss impermanent_loss(double delta_p, Price price, Price lower);

struct PoolQuote {
    std::size_t id;
    double fee_bps;
    CostBreakdown cost;
};

// Index into quotes of the lowest total cost; ties go to the lower fee, then
// the lower id. Throws domain_error on an empty list.
std::size_t select_cheapest(std::span<const PoolQuote> quotes);

struct RouteChoice {
    std::size_t id;  // v3 pools are numbered first, then v2 pools
    bool is_v2;
    CostBreakdown cost;
};

// Cheapest single pool for a trade of usd_size. Pools that cannot absorb the
// trade in either direction are skipped.
RouteChoice best_pool(std::span<const PoolState> v3_pools, std::span<const v2::PoolState> v2_pools,
                      double usd_size, double gas_cost_usd, Price usd_price_x, Price usd_price_y,
                      std::optional<double> gas_cost_usd_v2 = std::nullopt);

}  // namespace mq::v3
