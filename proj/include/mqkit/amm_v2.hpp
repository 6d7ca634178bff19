#pragma once

#include "mqkit/domain.hpp"

namespace mq::v2 {

// Constant-product pool holding x units of the base token and y units of the
// quote token. Fees are charged on the input and kept in separate
// accumulators so that the product of the reserves is exactly preserved.
struct PoolState {
    PoolState(Pair pair, double x, double y, double fee);

    // Same pool seen from the other side: base and quote swapped.
    PoolState reversed() const;

    double phi() const { return 1.0 - fee; }
    double k() const { return x * y; }

    Pair pair;
    double x;
    double y;
    double fee;  // fraction in [0, 1)
    double fees_x = 0.0;
    double fees_y = 0.0;
};

struct SwapResult {
    double amount_in;
    double amount_out;
    Price transaction_price;
    PoolState new_state;
};

// y / x. The opposite direction is quoted_price(pool).inverse().
Price quoted_price(const PoolState& pool);

double amount_out(const PoolState& pool, double dx);

SwapResult execute_swap(const PoolState& pool, double dx);

// Quoted half-spread for selling dx of the base token.
Bps half_spread(const PoolState& pool, double dx);

// Average of the X->Y and Y->X half-spreads for the same dollar notional.
// Notionals are converted at the supplied (pre-trade) USD prices.
Bps ba_spread(const PoolState& pool, double usd_size, Price usd_price_x, Price usd_price_y);

enum class IlMode { difference, percentage };

struct ImpermanentLoss {
    double il;
    double r_lp;  // gross return of the LP position, sqrt(dP)
    double r_h;   // gross return of holding, (dP + 1) / 2
};

// dP is the gross price change P'/P. In difference mode il = r_h - r_lp >= 0.
// In percentage mode il = r_lp / r_h - 1, which is <= 0.
ImpermanentLoss impermanent_loss(double delta_p, IlMode mode = IlMode::difference);

}  // namespace mq::v2
