#pragma once

#include <cmath>
#include <cstddef>

#include "mqkit/amm_v3.hpp"

namespace mq::test {

struct OracleResult {
    double amount_out = 0.0;
    double final_price = 0.0;
};

// Sells dx as a long run of equal sub-swaps. Each sub-swap moves 1/sqrt(P)
// by ds/L and pays ds * sqrt(P_before) * sqrt(P_after).
inline OracleResult micro_step_swap(const v3::PoolState& pool, double dx, int slices = 100'000) {
    const auto& grid = pool.grid;
    std::size_t i = pool.active_interval();
    double root = std::sqrt(pool.current_price.value());
    double out = 0.0;
    const double ds = dx / slices;
    for (int k = 0; k < slices; ++k) {
        double left = ds;
        while (left > 0.0) {
            const double root_lb = std::sqrt(grid.lower(i));
            const double l = pool.liquidity[i];
            if (l == 0.0) {
                root = root_lb;
                --i;
                continue;
            }
            const double root_next = 1.0 / (1.0 / root + left / l);
            if (root_next >= root_lb) {
                out += left * root * root_next;
                root = root_next;
                left = 0.0;
            } else {
                const double used = l * (1.0 / root_lb - 1.0 / root);
                out += used * root * root_lb;
                left -= used;
                root = root_lb;
                --i;
            }
        }
    }
    return {out, root * root};
}

}  // namespace mq::test
