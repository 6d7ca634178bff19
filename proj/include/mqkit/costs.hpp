#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mqkit/domain.hpp"

namespace mq {

struct GasSchedule {
    std::int64_t swap_units_v2 = 118'340;
    std::int64_t swap_units_v3 = 130'889;
    std::int64_t transfer_native = 21'000;
    std::int64_t transfer_erc20 = 65'000;

    std::int64_t deposit_units(TokenKind kind) const {
        return kind == TokenKind::native ? transfer_native : transfer_erc20;
    }
    void validate() const;
};

struct GasPoint {
    HourStamp stamp;
    double gas_price;  // native currency per gas unit
    Price native_usd;
};

class GasPriceSeries {
public:
    GasPriceSeries() = default;
    explicit GasPriceSeries(std::vector<GasPoint> points);

    // Latest point at or before stamp.
    const GasPoint& at(HourStamp stamp) const;
    const std::vector<GasPoint>& points() const { return points_; }

private:
    std::vector<GasPoint> points_;
};

// Withdrawal fees in token units, stepwise constant between snapshots.
class WithdrawFeeSchedule {
public:
    void add(const std::string& token, HourStamp stamp, double fee_tokens);
    double at(const std::string& token, HourStamp stamp) const;
    const std::map<std::string, std::vector<std::pair<HourStamp, double>>>& entries() const {
        return fees_;
    }

private:
    std::map<std::string, std::vector<std::pair<HourStamp, double>>> fees_;
};

struct CostBreakdown {
    Bps spread;
    Bps exchange_fee;
    Bps settlement;  // gas for DEX trades, deposit gas plus withdrawal fee for CEX trades
    Bps total;
    std::string venue;
    double trade_usd = 0.0;
};

double gas_cost_usd(std::int64_t units, HourStamp stamp, const GasPriceSeries& series);

CostBreakdown tc_dex(Bps spread, Bps fee_tier, double swap_gas_usd, double trade_usd,
                     std::string venue = "dex");

CostBreakdown tc_cex(Bps spread, Bps taker_fee, double deposit_gas_usd, double withdraw_fee_usd,
                     double trade_usd, std::string venue = "cex");

}  // namespace mq
