#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mqkit/amm_v2.hpp"
#include "mqkit/amm_v3.hpp"
#include "mqkit/costs.hpp"
#include "mqkit/lob.hpp"

namespace mq {

struct CexVenue {
    std::string name;
    Bps taker_fee;
    std::vector<lob::LobSnapshot> books;
};

struct PanelInputs {
    std::vector<std::pair<HourStamp, v2::PoolState>> pools_v2;
    std::vector<std::pair<HourStamp, v3::PoolState>> pools_v3;
    std::vector<CexVenue> cex;
    GasPriceSeries gas;
    WithdrawFeeSchedule withdraw_fees;
    GasSchedule gas_units;
};

struct PanelOptions {
    std::vector<double> sizes{1e3, 1e4, 1e5, 1e6};
    std::vector<std::string> pairs;  // empty: every pair seen in the inputs
    bool include_dw = true;
    std::set<std::string> usd_stables{"USD", "USDC", "USDT", "DAI"};
};

inline constexpr const char* venue_v2 = "uniswap_v2";
inline constexpr const char* venue_v3 = "uniswap_v3";
inline constexpr const char* venue_best_dex = "best_dex";
inline constexpr const char* venue_best_cex = "best_cex";

struct PanelRow {
    HourStamp stamp;
    std::string pair;
    double size_usd;
    CostBreakdown cost;  // cost.venue is the venue column
    std::string detail;  // chosen v3 tier, or the winning venue for best_* rows
};

// USD value of every token that can be priced at this hour: stablecoins at 1,
// the native token from the gas series, everything else through book mids,
// v2 reserve ratios and v3 quoted prices (in that order of preference).
std::map<std::string, double> usd_prices_at(HourStamp stamp, const PanelInputs& inputs,
                                            const std::set<std::string>& stables);

// Hourly cost panel sorted by (venue, pair, size, hour). Venues without data
// at an hour, or that cannot fill the size, are omitted for that hour.
std::vector<PanelRow> tc_panel(const PanelInputs& inputs, const PanelOptions& options);

struct SummaryRow {
    std::string venue;
    std::string pair;
    double size_usd;
    double spread_bps;
    double fee_bps;
    double settlement_bps;
    double total_bps;
    std::size_t hours;
};

// Means over hours per (venue, pair, size), in panel order.
std::vector<SummaryRow> summarize_panel(std::span<const PanelRow> rows);

}  // namespace mq
