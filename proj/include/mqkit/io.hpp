#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mqkit/amm_v2.hpp"
#include "mqkit/amm_v3.hpp"
#include "mqkit/arbitrage.hpp"
#include "mqkit/costs.hpp"
#include "mqkit/equilibrium.hpp"
#include "mqkit/lob.hpp"
#include "mqkit/panel.hpp"

namespace mq::io {

// A malformed record that was skipped. For JSON inputs `line` is the 1-based
// record index.
struct IngestError {
    std::string file;
    std::size_t line;
    std::string reason;
};

template <typename T>
struct Parsed {
    T value;
    std::vector<IngestError> errors;
};

struct ParseOptions {
    std::string file = "<input>";
    std::string native_symbol = "ETH";
};

using PoolsV2 = std::vector<std::pair<HourStamp, v2::PoolState>>;
using PoolsV3 = std::vector<std::pair<HourStamp, v3::PoolState>>;

// ts_hour,pair,x,y,fee_bps
Parsed<PoolsV2> parse_pool_v2_csv(std::istream& in, const ParseOptions& opt = {});
// [{ts_hour, pair, fee_tier_bps, current_price, ticks: [...], liquidity: [...]}, ...]
Parsed<PoolsV3> parse_pool_v3_json(std::istream& in, const ParseOptions& opt = {});
// ts_hour,pair,side,price,volume; one snapshot per (ts_hour, pair)
Parsed<std::vector<lob::LobSnapshot>> parse_lob_csv(std::istream& in, const ParseOptions& opt = {});
// ts_hour,gas_price,native_usd
Parsed<GasPriceSeries> parse_gas_csv(std::istream& in, const ParseOptions& opt = {});
// ts_hour,token,fee_tokens
Parsed<WithdrawFeeSchedule> parse_withdraw_fees_csv(std::istream& in,
                                                    const ParseOptions& opt = {});
// ts_hour,exchange,leg,price. The three distinct legs must form one triangle;
// one series per exchange, in order of first appearance.
Parsed<std::vector<arb::TripletQuoteSeries>> parse_quotes_csv(std::istream& in,
                                                              const ParseOptions& opt = {});

struct PairPanel {
    std::string pair;
    eq::PairDailySeries series;
};

// day,pair,volume,price_open,price_close,liquidity; daily IL is derived from
// the open-to-close price change.
Parsed<std::vector<PairPanel>> parse_equilibrium_csv(std::istream& in,
                                                     const ParseOptions& opt = {});

// Writers for the input schemas, at full round-trip precision.
void write_pool_v2_csv(std::ostream& out, std::span<const std::pair<HourStamp, v2::PoolState>> pools);
void write_lob_csv(std::ostream& out, std::span<const lob::LobSnapshot> books);
void write_gas_csv(std::ostream& out, const GasPriceSeries& series);
void write_withdraw_fees_csv(std::ostream& out, const WithdrawFeeSchedule& fees);
void write_quotes_csv(std::ostream& out, std::span<const arb::TripletQuoteSeries> series);

// Output schemas. Basis-point columns carry six fractional digits.
void write_panel_csv(std::ostream& out, std::span<const PanelRow> rows);
Parsed<std::vector<PanelRow>> parse_panel_csv(std::istream& in, const ParseOptions& opt = {});
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

struct DeviationReport {
    std::vector<arb::DeviationSeries> series;
    std::vector<arb::CombinedPoint> combined;
    std::int64_t window_hours = 168;
};
void write_deviations_csv(std::ostream& out, const DeviationReport& report);

struct EquilibriumRow {
    std::string pair;
    eq::DailyPoint point;
    std::optional<eq::Expectations> expected;
    std::optional<double> predicted;
};
void write_equilibrium_csv(std::ostream& out, std::span<const EquilibriumRow> rows);

struct Config {
    std::map<std::string, double> taker_fee_bps{{"binance", 10.0}, {"kraken", 26.0}};
    double default_taker_fee_bps = 10.0;
    GasSchedule gas;
    std::vector<double> sizes{1e3, 1e4, 1e5, 1e6};
    std::int64_t window_hours = 168;
    std::size_t window_days = 14;
    std::string native_symbol = "ETH";
    std::set<std::string> usd_stables{"USD", "USDC", "USDT", "DAI"};

    double taker_fee_for(const std::string& venue) const;
    void validate() const;
};

// JSON object; any subset of the keys taker_fee_bps (object), default_taker_fee_bps,
// gas (object of unit counts), sizes, window_hours, window_days, native_symbol,
// usd_stables overrides the defaults.
Config load_config(std::istream& in);

std::string format_bps(double v);

}  // namespace mq::io
