#include "mqkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>
#include <tuple>

#include <json.hpp>

namespace mq::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    for (;;) {
        auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return out;
}

struct bad_field : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double to_double(std::string_view s, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw bad_field(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

std::int64_t to_int(std::string_view s, const char* what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw bad_field(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

// Line-oriented CSV reader: checks the header, skips blank lines and hands
// each data row to the callback. Exceptions from the callback other than
// format_error become IngestErrors for that line.
template <typename RowFn>
std::vector<IngestError> read_csv(std::istream& in, const ParseOptions& opt,
                                  std::string_view header, std::size_t columns, RowFn&& on_row) {
    std::vector<IngestError> errors;
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        if (!seen_header) {
            std::string normalized;
            for (auto f : split(row)) normalized += std::string(f) + ",";
            normalized.pop_back();
            if (normalized != header)
                throw format_error(opt.file + ": expected header '" + std::string(header) + "'");
            seen_header = true;
            continue;
        }
        auto fields = split(row);
        try {
            if (fields.size() != columns)
                throw bad_field("expected " + std::to_string(columns) + " fields, got " +
                                std::to_string(fields.size()));
            on_row(fields, line_no);
        } catch (const format_error&) {
            throw;
        } catch (const std::exception& e) {
            errors.push_back({opt.file, line_no, e.what()});
        }
    }
    if (!seen_header)
        throw format_error(opt.file + ": missing header '" + std::string(header) + "'");
    return errors;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string full(double v) { return fmt("%.17g", v); }
std::string general(double v) { return fmt("%.12g", v); }

std::string source_name(arb::PriceSource s) {
    switch (s) {
        case arb::PriceSource::lob_mid: return "lob_mid";
        case arb::PriceSource::v2_reserve_ratio: return "v2_reserve_ratio";
        case arb::PriceSource::v3_quoted: return "v3_quoted";
        case arb::PriceSource::supplied: return "supplied";
    }
    return "supplied";
}

}  // namespace

std::string format_bps(double v) {
    std::string s = fmt("%.6f", v);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

Parsed<PoolsV2> parse_pool_v2_csv(std::istream& in, const ParseOptions& opt) {
    Parsed<PoolsV2> out;
    out.errors = read_csv(in, opt, "ts_hour,pair,x,y,fee_bps", 5, [&](const auto& f, std::size_t) {
        const HourStamp stamp{to_int(f[0], "ts_hour")};
        Pair pair = Pair::parse(f[1], opt.native_symbol);
        const double fee_bps = to_double(f[4], "fee_bps");
        out.value.emplace_back(stamp, v2::PoolState(std::move(pair), to_double(f[2], "x"),
                                                    to_double(f[3], "y"), fee_bps / 1e4));
    });
    return out;
}

Parsed<PoolsV3> parse_pool_v3_json(std::istream& in, const ParseOptions& opt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(opt.file + ": " + e.what());
    }
    if (!doc.is_array()) throw format_error(opt.file + ": expected a JSON array of pools");

    Parsed<PoolsV3> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        try {
            const auto ticks = rec.at("ticks").get<std::vector<double>>();
            auto liquidity = rec.at("liquidity").get<std::vector<double>>();
            if (ticks.size() < 2 || liquidity.size() + 1 != ticks.size())
                throw domain_error("need |liquidity| == |ticks| - 1 with at least two ticks");
            out.value.emplace_back(
                HourStamp{rec.at("ts_hour").get<std::int64_t>()},
                v3::PoolState(Pair::parse(rec.at("pair").get<std::string>(), opt.native_symbol),
                              v3::fee_tier_from_bps(rec.at("fee_tier_bps").get<int>()),
                              v3::TickGrid(ticks), std::move(liquidity),
                              Price(rec.at("current_price").get<double>())));
        } catch (const std::exception& e) {
            out.errors.push_back({opt.file, i + 1, e.what()});
        }
    }
    return out;
}

Parsed<std::vector<lob::LobSnapshot>> parse_lob_csv(std::istream& in, const ParseOptions& opt) {
    struct Group {
        std::size_t first_line;
        std::vector<lob::Level> bids;
        std::vector<lob::Level> asks;
    };
    std::map<std::pair<std::int64_t, std::string>, Group> groups;

    Parsed<std::vector<lob::LobSnapshot>> out;
    out.errors = read_csv(in, opt, "ts_hour,pair,side,price,volume", 5,
                          [&](const auto& f, std::size_t line) {
                              const std::int64_t ts = to_int(f[0], "ts_hour");
                              Pair::parse(f[1], opt.native_symbol);
                              const lob::Level level{to_double(f[3], "price"),
                                                     to_double(f[4], "volume")};
                              if (!(level.price > 0.0) || !(level.volume > 0.0))
                                  throw bad_field("price and volume must be positive");
                              const bool bid = f[2] == "bid";
                              if (!bid && f[2] != "ask")
                                  throw bad_field("side must be bid or ask");
                              auto [it, fresh] = groups.try_emplace({ts, std::string(f[1])},
                                                                    Group{line, {}, {}});
                              (bid ? it->second.bids : it->second.asks).push_back(level);
                          });
    for (auto& [key, g] : groups) {
        try {
            out.value.push_back(lob::LobSnapshot::from_unsorted(
                Pair::parse(key.second, opt.native_symbol), HourStamp{key.first},
                std::move(g.bids), std::move(g.asks)));
        } catch (const std::exception& e) {
            out.errors.push_back({opt.file, g.first_line, e.what()});
        }
    }
    std::ranges::sort(out.errors, {}, &IngestError::line);
    return out;
}

Parsed<GasPriceSeries> parse_gas_csv(std::istream& in, const ParseOptions& opt) {
    std::vector<GasPoint> points;
    Parsed<GasPriceSeries> out;
    out.errors = read_csv(in, opt, "ts_hour,gas_price,native_usd", 3,
                          [&](const auto& f, std::size_t line) {
                              const HourStamp stamp{to_int(f[0], "ts_hour")};
                              const double gas = to_double(f[1], "gas_price");
                              if (!(gas > 0.0)) throw bad_field("gas price must be positive");
                              const Price usd(to_double(f[2], "native_usd"));
                              if (!points.empty() && !(points.back().stamp < stamp))
                                  throw format_error(opt.file + ":" + std::to_string(line) +
                                                     ": gas stamps must be strictly increasing");
                              points.push_back({stamp, gas, usd});
                          });
    out.value = GasPriceSeries(std::move(points));
    return out;
}

Parsed<WithdrawFeeSchedule> parse_withdraw_fees_csv(std::istream& in, const ParseOptions& opt) {
    Parsed<WithdrawFeeSchedule> out;
    out.errors = read_csv(in, opt, "ts_hour,token,fee_tokens", 3,
                          [&](const auto& f, std::size_t line) {
                              const HourStamp stamp{to_int(f[0], "ts_hour")};
                              const std::string token(f[1]);
                              if (token.empty()) throw bad_field("empty token");
                              const double fee = to_double(f[2], "fee_tokens");
                              if (!(fee >= 0.0)) throw bad_field("fee must be non-negative");
                              const auto& entries = out.value.entries();
                              if (auto it = entries.find(token);
                                  it != entries.end() && !(it->second.back().first < stamp))
                                  throw format_error(opt.file + ":" + std::to_string(line) +
                                                     ": fee stamps must be strictly increasing "
                                                     "per token");
                              out.value.add(token, stamp, fee);
                          });
    return out;
}

Parsed<std::vector<arb::TripletQuoteSeries>> parse_quotes_csv(std::istream& in,
                                                              const ParseOptions& opt) {
    struct Row {
        HourStamp stamp;
        std::string exchange;
        Pair leg;
        double price;
    };
    std::vector<Row> rows;
    std::map<std::tuple<std::string, std::string>, HourStamp> last_stamp;
    Parsed<std::vector<arb::TripletQuoteSeries>> out;
    out.errors = read_csv(in, opt, "ts_hour,exchange,leg,price", 4,
                          [&](const auto& f, std::size_t line) {
                              const HourStamp stamp{to_int(f[0], "ts_hour")};
                              std::string exchange(f[1]);
                              if (exchange.empty()) throw bad_field("empty exchange");
                              Pair leg = Pair::parse(f[2], opt.native_symbol);
                              const double price = to_double(f[3], "price");
                              if (!(price > 0.0)) throw bad_field("price must be positive");
                              auto key = std::make_tuple(exchange, leg.name());
                              if (auto it = last_stamp.find(key);
                                  it != last_stamp.end() && !(it->second < stamp))
                                  throw format_error(opt.file + ":" + std::to_string(line) +
                                                     ": quote stamps must be strictly increasing "
                                                     "per exchange and leg");
                              last_stamp[key] = stamp;
                              rows.push_back({stamp, std::move(exchange), std::move(leg), price});
                          });
    if (rows.empty()) return out;

    // Distinct legs up to orientation must form a triangle X-Y, Y-Z, Z-X.
    std::vector<Pair> legs;
    for (const Row& r : rows)
        if (std::ranges::none_of(legs, [&](const Pair& p) {
                return p == r.leg || p == r.leg.reversed();
            }))
            legs.push_back(r.leg);
    if (legs.size() != 3)
        throw format_error(opt.file + ": expected exactly three legs, found " +
                           std::to_string(legs.size()));
    const Token& x = legs[0].base;
    const Token& y = legs[0].quote;
    std::optional<Token> z;
    for (const Pair& p : {legs[1], legs[2]})
        for (const Token* t : {&p.base, &p.quote})
            if (!(*t == x) && !(*t == y)) z = *t;
    if (!z) throw format_error(opt.file + ": legs do not form a triangle");
    std::optional<arb::Triplet> triplet;
    try {
        triplet.emplace(std::array<Pair, 3>{Pair(x, y), Pair(y, *z), Pair(*z, x)});
        for (const Pair& leg : legs)
            if (std::ranges::none_of(triplet->legs(), [&](const Pair& p) {
                    return p == leg || p == leg.reversed();
                }))
                throw arb::triplet_error("leg " + leg.name() + " is not part of the triangle");
    } catch (const domain_error& e) {
        throw format_error(opt.file + ": " + e.what());
    }

    std::vector<std::string> exchanges;
    for (const Row& r : rows)
        if (std::ranges::find(exchanges, r.exchange) == exchanges.end())
            exchanges.push_back(r.exchange);
    for (const std::string& ex : exchanges) {
        std::map<HourStamp, std::array<std::optional<double>, 3>> by_hour;
        for (const Row& r : rows) {
            if (r.exchange != ex) continue;
            for (std::size_t k = 0; k < 3; ++k) {
                const Pair& leg = triplet->legs()[k];
                if (r.leg == leg) by_hour[r.stamp][k] = r.price;
                if (r.leg == leg.reversed()) by_hour[r.stamp][k] = 1.0 / r.price;
            }
        }
        std::vector<arb::QuotePoint> points;
        for (const auto& [stamp, p] : by_hour)
            if (p[0] && p[1] && p[2]) points.push_back({stamp, *p[0], *p[1], *p[2]});
        out.value.emplace_back(*triplet, ex, std::move(points));
    }
    return out;
}

Parsed<std::vector<PairPanel>> parse_equilibrium_csv(std::istream& in, const ParseOptions& opt) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<eq::DailyPoint>> by_pair;
    Parsed<std::vector<PairPanel>> out;
    out.errors = read_csv(
        in, opt, "day,pair,volume,price_open,price_close,liquidity", 6,
        [&](const auto& f, std::size_t line) {
            const std::int64_t day = to_int(f[0], "day");
            const std::string pair = Pair::parse(f[1], opt.native_symbol).name();
            const double volume = to_double(f[2], "volume");
            const double il = eq::daily_il(to_double(f[3], "price_open"),
                                           to_double(f[4], "price_close"));
            const double liquidity = to_double(f[5], "liquidity");
            if (!(volume >= 0.0)) throw bad_field("volume must be non-negative");
            if (!(liquidity > 0.0)) throw bad_field("liquidity must be positive");
            auto& pts = by_pair[pair];
            if (pts.empty()) order.push_back(pair);
            if (!pts.empty() && !(pts.back().day < day))
                throw format_error(opt.file + ":" + std::to_string(line) +
                                   ": days must be strictly increasing per pair");
            pts.push_back({day, volume, il, liquidity});
        });
    for (const std::string& pair : order)
        out.value.push_back({pair, eq::PairDailySeries(std::move(by_pair[pair]))});
    return out;
}

void write_pool_v2_csv(std::ostream& out,
                       std::span<const std::pair<HourStamp, v2::PoolState>> pools) {
    out << "ts_hour,pair,x,y,fee_bps\n";
    for (const auto& [stamp, p] : pools)
        out << stamp.epoch_hour << ',' << p.pair.name() << ',' << full(p.x) << ',' << full(p.y)
            << ',' << full(p.fee * 1e4) << '\n';
}

void write_lob_csv(std::ostream& out, std::span<const lob::LobSnapshot> books) {
    out << "ts_hour,pair,side,price,volume\n";
    for (const auto& b : books) {
        for (const auto& l : b.bids())
            out << b.stamp().epoch_hour << ',' << b.pair().name() << ",bid," << full(l.price)
                << ',' << full(l.volume) << '\n';
        for (const auto& l : b.asks())
            out << b.stamp().epoch_hour << ',' << b.pair().name() << ",ask," << full(l.price)
                << ',' << full(l.volume) << '\n';
    }
}

void write_gas_csv(std::ostream& out, const GasPriceSeries& series) {
    out << "ts_hour,gas_price,native_usd\n";
    for (const auto& p : series.points())
        out << p.stamp.epoch_hour << ',' << full(p.gas_price) << ',' << full(p.native_usd.value())
            << '\n';
}

void write_withdraw_fees_csv(std::ostream& out, const WithdrawFeeSchedule& fees) {
    out << "ts_hour,token,fee_tokens\n";
    for (const auto& [token, entries] : fees.entries())
        for (const auto& [stamp, fee] : entries)
            out << stamp.epoch_hour << ',' << token << ',' << full(fee) << '\n';
}

void write_quotes_csv(std::ostream& out, std::span<const arb::TripletQuoteSeries> series) {
    out << "ts_hour,exchange,leg,price\n";
    for (const auto& s : series)
        for (const auto& p : s.points) {
            const double prices[3] = {p.p_xy, p.p_yz, p.p_zx};
            for (std::size_t k = 0; k < 3; ++k)
                out << p.stamp.epoch_hour << ',' << s.exchange << ','
                    << s.triplet.legs()[k].name() << ',' << full(prices[k]) << '\n';
        }
}

void write_panel_csv(std::ostream& out, std::span<const PanelRow> rows) {
    out << "ts_hour,venue,pair,size_usd,spread_bps,fee_bps,settlement_bps,total_bps,detail\n";
    for (const PanelRow& r : rows)
        out << r.stamp.epoch_hour << ',' << r.cost.venue << ',' << r.pair << ','
            << full(r.size_usd) << ',' << format_bps(r.cost.spread.value()) << ','
            << format_bps(r.cost.exchange_fee.value()) << ','
            << format_bps(r.cost.settlement.value()) << ',' << format_bps(r.cost.total.value())
            << ',' << r.detail << '\n';
}

Parsed<std::vector<PanelRow>> parse_panel_csv(std::istream& in, const ParseOptions& opt) {
    Parsed<std::vector<PanelRow>> out;
    out.errors = read_csv(
        in, opt, "ts_hour,venue,pair,size_usd,spread_bps,fee_bps,settlement_bps,total_bps,detail",
        9, [&](const auto& f, std::size_t) {
            PanelRow r{HourStamp{to_int(f[0], "ts_hour")}, std::string(f[2]),
                       to_double(f[3], "size_usd"), {}, std::string(f[8])};
            r.cost = {Bps(to_double(f[4], "spread_bps")), Bps(to_double(f[5], "fee_bps")),
                      Bps(to_double(f[6], "settlement_bps")), Bps(to_double(f[7], "total_bps")),
                      std::string(f[1]), r.size_usd};
            out.value.push_back(std::move(r));
        });
    return out;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
    out << "venue,pair,size_usd,spread_bps,fee_bps,settlement_bps,total_bps,hours\n";
    for (const SummaryRow& r : rows)
        out << r.venue << ',' << r.pair << ',' << full(r.size_usd) << ','
            << format_bps(r.spread_bps) << ',' << format_bps(r.fee_bps) << ','
            << format_bps(r.settlement_bps) << ',' << format_bps(r.total_bps) << ',' << r.hours
            << '\n';
}

void write_deviations_csv(std::ostream& out, const DeviationReport& report) {
    out << "ts_hour,series,theta_bps,abs_theta_bps,top_decile_bps,source\n";
    auto emit = [&](const std::string& name, std::span<const arb::DeviationPoint> points,
                    auto&& source_of) {
        const auto bands = arb::rolling_top_decile(points, report.window_hours);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double t = points[i].theta * 1e4;
            out << points[i].stamp.epoch_hour << ',' << name << ',' << format_bps(t) << ','
                << format_bps(std::abs(t)) << ','
                << (bands[i].top_decile ? format_bps(*bands[i].top_decile * 1e4) : "") << ','
                << source_of(i) << '\n';
        }
    };
    for (const auto& s : report.series)
        emit(s.label, s.points, [&](std::size_t) { return source_name(s.source); });
    std::vector<arb::DeviationPoint> combined;
    for (const auto& c : report.combined) combined.push_back({c.stamp, c.theta});
    emit("min_abs", combined, [&](std::size_t i) { return report.combined[i].winner; });
}

void write_equilibrium_csv(std::ostream& out, std::span<const EquilibriumRow> rows) {
    out << "pair,day,volume,il,observed,expected_volume,expected_il,predicted\n";
    for (const EquilibriumRow& r : rows) {
        out << r.pair << ',' << r.point.day << ',' << general(r.point.volume) << ','
            << general(r.point.il) << ',' << general(r.point.liquidity) << ',';
        if (r.expected)
            out << general(r.expected->volume) << ',' << general(r.expected->il);
        else
            out << ',';
        out << ',' << (r.predicted ? general(*r.predicted) : "") << '\n';
    }
}

double Config::taker_fee_for(const std::string& venue) const {
    auto it = taker_fee_bps.find(venue);
    return it == taker_fee_bps.end() ? default_taker_fee_bps : it->second;
}

void Config::validate() const {
    for (const auto& [venue, fee] : taker_fee_bps)
        if (!(fee >= 0.0)) throw domain_error("taker fee for " + venue + " must be >= 0");
    if (!(default_taker_fee_bps >= 0.0)) throw domain_error("default taker fee must be >= 0");
    gas.validate();
    if (sizes.empty()) throw domain_error("trade size grid must be non-empty");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0.0)) throw domain_error("trade sizes must be positive");
        if (i > 0 && !(sizes[i - 1] < sizes[i]))
            throw domain_error("trade sizes must be strictly increasing");
    }
    if (window_hours < 1 || window_days < 1) throw domain_error("windows must be >= 1");
}

Config load_config(std::istream& in) {
    Config c;
    try {
        const auto j = nlohmann::json::parse(in);
        if (!j.is_object()) throw format_error("config must be a JSON object");
        if (j.contains("taker_fee_bps"))
            for (const auto& [venue, fee] : j.at("taker_fee_bps").items())
                c.taker_fee_bps[venue] = fee.get<double>();
        if (j.contains("default_taker_fee_bps"))
            c.default_taker_fee_bps = j.at("default_taker_fee_bps").get<double>();
        if (j.contains("gas")) {
            const auto& g = j.at("gas");
            c.gas.swap_units_v2 = g.value("swap_units_v2", c.gas.swap_units_v2);
            c.gas.swap_units_v3 = g.value("swap_units_v3", c.gas.swap_units_v3);
            c.gas.transfer_native = g.value("transfer_native", c.gas.transfer_native);
            c.gas.transfer_erc20 = g.value("transfer_erc20", c.gas.transfer_erc20);
        }
        if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<double>>();
        c.window_hours = j.value("window_hours", c.window_hours);
        c.window_days = j.value("window_days", c.window_days);
        c.native_symbol = j.value("native_symbol", c.native_symbol);
        if (j.contains("usd_stables"))
            c.usd_stables = j.at("usd_stables").get<std::set<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

}  // namespace mq::io
