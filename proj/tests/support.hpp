#pragma once

#include <algorithm>
#include <cmath>
#include <random>

namespace mq::test {

inline double rel_err(double actual, double expected) {
    const double scale = std::max(std::abs(expected), 1e-300);
    return std::abs(actual - expected) / scale;
}

inline bool rel_close(double actual, double expected, double tol) {
    return rel_err(actual, expected) <= tol;
}

// Log-uniform draw in [lo, hi].
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

}  // namespace mq::test
