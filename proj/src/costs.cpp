#include "mqkit/costs.hpp"

#include <algorithm>
#include <cmath>

namespace mq {

namespace {

CostBreakdown assemble(Bps spread, Bps fee, double settlement_usd, double trade_usd,
                       std::string venue) {
    if (!(trade_usd > 0.0) || !std::isfinite(trade_usd))
        throw domain_error("trade size must be positive");
    if (!(settlement_usd >= 0.0)) throw domain_error("settlement cost must be non-negative");
    const Bps settlement = Bps::from_fraction(settlement_usd / trade_usd);
    return {spread, fee, settlement, spread + fee + settlement, std::move(venue), trade_usd};
}

}  // namespace

void GasSchedule::validate() const {
    if (swap_units_v2 <= 0 || swap_units_v3 <= 0 || transfer_native <= 0 || transfer_erc20 <= 0)
        throw domain_error("gas units must be positive");
}

GasPriceSeries::GasPriceSeries(std::vector<GasPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i].gas_price > 0.0)) throw domain_error("gas price must be positive");
        if (i > 0 && !(points_[i - 1].stamp < points_[i].stamp))
            throw domain_error("gas series stamps must be strictly increasing");
    }
}

const GasPoint& GasPriceSeries::at(HourStamp stamp) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), stamp,
                               [](HourStamp s, const GasPoint& p) { return s < p.stamp; });
    if (it == points_.begin())
        throw coverage_error("no gas price at or before hour " + std::to_string(stamp.epoch_hour));
    return *std::prev(it);
}

void WithdrawFeeSchedule::add(const std::string& token, HourStamp stamp, double fee_tokens) {
    if (!(fee_tokens >= 0.0) || !std::isfinite(fee_tokens))
        throw domain_error("withdrawal fee must be non-negative");
    auto& v = fees_[token];
    if (!v.empty() && !(v.back().first < stamp))
        throw domain_error("withdrawal fee stamps must be strictly increasing for " + token);
    v.emplace_back(stamp, fee_tokens);
}

double WithdrawFeeSchedule::at(const std::string& token, HourStamp stamp) const {
    auto found = fees_.find(token);
    if (found == fees_.end()) throw coverage_error("no withdrawal fee for token " + token);
    const auto& v = found->second;
    auto it = std::upper_bound(v.begin(), v.end(), stamp,
                               [](HourStamp s, const auto& e) { return s < e.first; });
    if (it == v.begin())
        throw coverage_error("no withdrawal fee for " + token + " at or before hour " +
                             std::to_string(stamp.epoch_hour));
    return std::prev(it)->second;
}

double gas_cost_usd(std::int64_t units, HourStamp stamp, const GasPriceSeries& series) {
    if (units < 0) throw domain_error("gas units must be non-negative");
    const GasPoint& p = series.at(stamp);
    return static_cast<double>(units) * p.gas_price * p.native_usd.value();
}

CostBreakdown tc_dex(Bps spread, Bps fee_tier, double swap_gas_usd, double trade_usd,
                     std::string venue) {
    return assemble(spread, fee_tier, swap_gas_usd, trade_usd, std::move(venue));
}

CostBreakdown tc_cex(Bps spread, Bps taker_fee, double deposit_gas_usd, double withdraw_fee_usd,
                     double trade_usd, std::string venue) {
    return assemble(spread, taker_fee, deposit_gas_usd + withdraw_fee_usd, trade_usd,
                    std::move(venue));
}

}  // namespace mq
