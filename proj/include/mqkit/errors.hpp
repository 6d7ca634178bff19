#pragma once

#include <stdexcept>
#include <string>

namespace mq {

// Invalid argument to a market operation (non-positive price, size, ...).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input that prevents reading a whole file.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct insufficient_liquidity_error : domain_error {
    insufficient_liquidity_error(const std::string& what, double max_input)
        : domain_error(what), max_input(max_input) {}
    double max_input;  // largest input the pool can absorb
};

struct depth_error : domain_error {
    depth_error(const std::string& what, double available)
        : domain_error(what), available(available) {}
    double available;
};

struct coverage_error : domain_error {
    using domain_error::domain_error;
};

// A price outside the range a formula is valid for.
struct out_of_range_error : domain_error {
    using domain_error::domain_error;
};

}  // namespace mq
