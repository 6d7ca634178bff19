#include "mqkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mqkit/io.hpp"

namespace mq::cli {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw format_error("cannot write " + path);
    return out;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Session {
public:
    Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    template <typename T>
    T take(io::Parsed<T> parsed) {
        for (const auto& e : parsed.errors) err_ << e.file << ':' << e.line << ": " << e.reason << '\n';
        skipped_ += parsed.errors.size();
        return std::move(parsed.value);
    }

    template <typename ParseFn>
    auto load(const std::string& path, const io::Config& cfg, ParseFn parse) {
        auto in = open_in(path);
        return take(parse(in, io::ParseOptions{path, cfg.native_symbol}));
    }

    void finish() const {
        if (skipped_ > 0) err_ << skipped_ << " malformed record(s) skipped\n";
    }

    std::ostream& out() { return out_; }

private:
    std::ostream& out_;
    std::ostream& err_;
    std::size_t skipped_ = 0;
};

struct TcTableArgs {
    std::string pools_v2;
    std::string pools_v3;
    std::vector<std::string> lob;
    std::string gas;
    std::string wfees;
    std::vector<double> sizes;
    std::vector<std::string> pairs;
    bool no_dw = false;
    std::string out;
    std::string summary;
};

void tc_table(const TcTableArgs& a, const io::Config& cfg, Session& s) {
    PanelInputs in;
    in.gas_units = cfg.gas;
    if (!a.pools_v2.empty()) in.pools_v2 = s.load(a.pools_v2, cfg, io::parse_pool_v2_csv);
    if (!a.pools_v3.empty()) in.pools_v3 = s.load(a.pools_v3, cfg, io::parse_pool_v3_json);
    for (const std::string& spec : a.lob) {
        auto eq = spec.find('=');
        std::string venue = eq == std::string::npos
                                ? std::filesystem::path(spec).stem().string()
                                : spec.substr(0, eq);
        std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        in.cex.push_back({venue, Bps(cfg.taker_fee_for(venue)),
                          s.load(path, cfg, io::parse_lob_csv)});
    }
    in.gas = s.load(a.gas, cfg, io::parse_gas_csv);
    if (!a.wfees.empty()) in.withdraw_fees = s.load(a.wfees, cfg, io::parse_withdraw_fees_csv);

    PanelOptions opt;
    opt.sizes = cfg.sizes;
    opt.pairs = a.pairs;
    opt.include_dw = !a.no_dw;
    opt.usd_stables = cfg.usd_stables;
    const auto rows = tc_panel(in, opt);

    auto out = open_out(a.out);
    io::write_panel_csv(out, rows);
    if (!a.summary.empty()) {
        auto sum = open_out(a.summary);
        io::write_summary_csv(sum, summarize_panel(rows));
    }
    s.out() << "rows=" << rows.size() << '\n';
}

void arb_scan(const std::string& quotes, std::int64_t window_hours, const std::string& out_path,
              const io::Config& cfg, Session& s) {
    const auto series = s.load(quotes, cfg, io::parse_quotes_csv);
    io::DeviationReport report;
    report.window_hours = window_hours;
    for (const auto& q : series) report.series.push_back(arb::deviation_series(q));
    report.combined = arb::min_abs_combine(report.series);

    auto out = open_out(out_path);
    io::write_deviations_csv(out, report);
    auto mean_abs_bps = [](const auto& points) {
        double sum = 0.0;
        for (const auto& p : points) sum += std::abs(p.theta);
        return points.empty() ? 0.0 : sum / static_cast<double>(points.size()) * 1e4;
    };
    for (const auto& d : report.series)
        s.out() << "series=" << d.label << " points=" << d.points.size()
                << " mean_abs_theta_bps=" << io::format_bps(mean_abs_bps(d.points)) << '\n';
    s.out() << "series=min_abs points=" << report.combined.size()
            << " mean_abs_theta_bps=" << io::format_bps(mean_abs_bps(report.combined)) << '\n';
}

struct IlArgs {
    double delta_p = 0.0;
    bool v3 = false;
    std::optional<double> price;
    std::optional<double> lower;
    bool percentage = false;
};

void il(const IlArgs& a, Session& s) {
    if (a.v3) {
        if (!a.price || !a.lower) throw CLI::RequiredError("--v3 needs --p and --pa");
        const auto r = v3::impermanent_loss(a.delta_p, Price(*a.price), Price(*a.lower));
        const auto parts = v2::impermanent_loss(a.delta_p);
        s.out() << "IL=" << num(r.il) << "\nlambda=" << num(r.leverage) << "\nIL2=" << num(r.il_v2)
                << "\nR_LP=" << num(parts.r_lp) << "\nR_H=" << num(parts.r_h) << '\n';
        return;
    }
    const auto r = v2::impermanent_loss(
        a.delta_p, a.percentage ? v2::IlMode::percentage : v2::IlMode::difference);
    s.out() << "IL=" << num(r.il) << "\nR_LP=" << num(r.r_lp) << "\nR_H=" << num(r.r_h) << '\n';
}

struct RouteArgs {
    std::string pools_v3;
    std::string pools_v2;
    double size = 0.0;
    double gas_usd = 0.0;
    std::optional<double> gas_usd_v2;
    std::optional<std::int64_t> ts_hour;
    std::optional<std::string> pair;
    std::optional<double> usd_x;
    std::optional<double> usd_y;
};

void route(const RouteArgs& a, const io::Config& cfg, Session& s) {
    const auto v3_all = s.load(a.pools_v3, cfg, io::parse_pool_v3_json);
    io::PoolsV2 v2_all;
    if (!a.pools_v2.empty()) v2_all = s.load(a.pools_v2, cfg, io::parse_pool_v2_csv);
    if (v3_all.empty() && v2_all.empty()) throw domain_error("no valid pools to route through");

    // Latest hour unless one is requested; pair of the first pool at that hour.
    HourStamp hour{std::numeric_limits<std::int64_t>::min()};
    if (a.ts_hour) {
        hour = HourStamp{*a.ts_hour};
    } else {
        for (const auto& [h, p] : v3_all) hour = std::max(hour, h);
        for (const auto& [h, p] : v2_all) hour = std::max(hour, h);
    }
    std::optional<std::string> pair = a.pair;
    std::vector<v3::PoolState> v3_pools;
    std::vector<v2::PoolState> v2_pools;
    std::optional<double> first_price;
    for (const auto& [h, p] : v3_all) {
        if (h != hour) continue;
        if (!pair) pair = p.pair.name();
        if (p.pair.name() != *pair) continue;
        if (!first_price) first_price = p.current_price.value();
        v3_pools.push_back(p);
    }
    for (const auto& [h, p] : v2_all) {
        if (h != hour) continue;
        if (!pair) pair = p.pair.name();
        if (p.pair.name() != *pair) continue;
        if (!first_price) first_price = v2::quoted_price(p).value();
        v2_pools.push_back(p);
    }
    if (!first_price) throw domain_error("no pools at the requested hour and pair");

    // Without explicit USD prices the quote token is the numeraire.
    const double usd_y = a.usd_y.value_or(1.0);
    const double usd_x = a.usd_x.value_or(*first_price * usd_y);
    const auto choice = v3::best_pool(v3_pools, v2_pools, a.size, a.gas_usd, Price(usd_x),
                                      Price(usd_y), a.gas_usd_v2);
    const std::size_t index = choice.is_v2 ? choice.id - v3_pools.size() : choice.id;
    const double tier = choice.is_v2 ? v2_pools[index].fee * 1e4
                                     : static_cast<double>(v3::to_bps(v3_pools[index].fee_tier));
    s.out() << "hour=" << hour.epoch_hour << " pair=" << *pair << " pool=" << choice.id
            << " venue=" << choice.cost.venue << " fee_tier_bps=" << num(tier) << '\n'
            << "spread_bps=" << io::format_bps(choice.cost.spread.value())
            << " fee_bps=" << io::format_bps(choice.cost.exchange_fee.value())
            << " settlement_bps=" << io::format_bps(choice.cost.settlement.value())
            << " total_bps=" << io::format_bps(choice.cost.total.value()) << '\n';
}

void eq_fit(const std::string& panel, std::size_t window_days, double fee_bps,
            const std::string& out_path, const io::Config& cfg, Session& s) {
    const auto pairs = s.load(panel, cfg, io::parse_equilibrium_csv);
    const double fee = fee_bps / 1e4;
    std::vector<io::EquilibriumRow> rows;
    std::vector<double> observed;
    std::vector<double> predicted;
    for (const auto& p : pairs) {
        const auto stats = eq::expected_stats(p.series, window_days);
        for (std::size_t i = 0; i < stats.size(); ++i) {
            io::EquilibriumRow row{p.pair, p.series.points[i], stats[i], std::nullopt};
            if (stats[i] && stats[i]->il > 0.0)
                row.predicted = eq::predicted_liquidity(fee, stats[i]->volume, stats[i]->il);
            observed.push_back(row.point.liquidity);
            predicted.push_back(row.predicted && *row.predicted > 0.0 ? *row.predicted : NAN);
            rows.push_back(std::move(row));
        }
    }
    auto out = open_out(out_path);
    io::write_equilibrium_csv(out, rows);
    const auto fit = eq::model_fit(observed, predicted);
    s.out() << "slope=" << num(fit.slope) << " intercept=" << num(fit.intercept)
            << " r_squared=" << num(fit.r_squared) << " n=" << fit.n_observations << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Market-quality toolkit for AMM and order-book venues", "mqkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file");

    TcTableArgs tc;
    auto* tc_cmd = app.add_subcommand("tc-table", "Hourly transaction-cost panel");
    tc_cmd->add_option("--pools-v2", tc.pools_v2, "v2 pool snapshots (CSV)");
    tc_cmd->add_option("--pools-v3", tc.pools_v3, "v3 pool snapshots (JSON)");
    tc_cmd->add_option("--lob", tc.lob, "order-book snapshots, [VENUE=]FILE, repeatable");
    tc_cmd->add_option("--gas", tc.gas, "hourly gas prices (CSV)")->required();
    tc_cmd->add_option("--wfees", tc.wfees, "withdrawal fee snapshots (CSV)");
    auto* sizes_opt =
        tc_cmd->add_option("--sizes", tc.sizes, "trade sizes in USD")->delimiter(',');
    tc_cmd->add_option("--pairs", tc.pairs, "restrict to these pairs")->delimiter(',');
    tc_cmd->add_flag("--no-dw", tc.no_dw, "leave out deposit and withdrawal costs");
    tc_cmd->add_option("--out", tc.out, "panel CSV")->required();
    tc_cmd->add_option("--summary", tc.summary, "per venue/pair/size means CSV");

    std::string quotes;
    std::int64_t window_hours = 168;
    std::string arb_out;
    auto* arb_cmd = app.add_subcommand("arb-scan", "Triangular deviations and bands");
    arb_cmd->add_option("--quotes", quotes, "triplet quotes (CSV)")->required();
    auto* window_opt = arb_cmd->add_option("--window-hours", window_hours, "rolling window")
                           ->check(CLI::PositiveNumber);
    arb_cmd->add_option("--out", arb_out, "deviations CSV")->required();

    IlArgs il_args;
    auto* il_cmd = app.add_subcommand("il", "Impermanent loss");
    il_cmd->add_option("--delta-p", il_args.delta_p, "gross price change P'/P")->required();
    il_cmd->add_flag("--v3", il_args.v3, "concentrated position centred on --p");
    il_cmd->add_option("--p", il_args.price, "current price");
    il_cmd->add_option("--pa", il_args.lower, "lower bound of the position");
    il_cmd->add_flag("--percentage", il_args.percentage, "R_LP / R_H - 1 instead of R_H - R_LP");

    RouteArgs route_args;
    auto* route_cmd = app.add_subcommand("route", "Cheapest single pool for a trade");
    route_cmd->add_option("--pools-v3", route_args.pools_v3, "v3 pool snapshots (JSON)")
        ->required();
    route_cmd->add_option("--pools-v2", route_args.pools_v2, "v2 pool snapshots (CSV)");
    route_cmd->add_option("--size", route_args.size, "trade size in USD")->required();
    route_cmd->add_option("--gas-usd", route_args.gas_usd, "swap gas cost in USD")->required();
    route_cmd->add_option("--gas-usd-v2", route_args.gas_usd_v2, "gas cost for v2 pools");
    route_cmd->add_option("--ts-hour", route_args.ts_hour, "hour to route at (default: latest)");
    route_cmd->add_option("--pair", route_args.pair, "pair (default: first pool's)");
    route_cmd->add_option("--usd-x", route_args.usd_x, "USD price of the base token");
    route_cmd->add_option("--usd-y", route_args.usd_y, "USD price of the quote token");

    std::string panel;
    std::size_t window_days = 14;
    double fee_bps = 30.0;
    std::string eq_out;
    auto* eq_cmd = app.add_subcommand("eq-fit", "Equilibrium liquidity and model fit");
    eq_cmd->add_option("--panel", panel, "pair-day panel (CSV)")->required();
    eq_cmd->add_option("--window-days", window_days, "rolling window")
        ->check(CLI::IsMember({5, 14, 20}));
    eq_cmd->add_option("--fee-bps", fee_bps, "pool fee in bps");
    eq_cmd->add_option("--out", eq_out, "equilibrium CSV")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << "run with --help for usage\n";
        return exit_usage;
    }

    Session session(out, err);
    try {
        io::Config cfg;
        if (!config_path.empty()) {
            auto in = open_in(config_path);
            cfg = io::load_config(in);
        }
        if (*tc_cmd) {
            if (sizes_opt->count() > 0) {
                cfg.sizes = tc.sizes;
                cfg.validate();
            }
            tc_table(tc, cfg, session);
        } else if (*arb_cmd) {
            arb_scan(quotes, window_opt->count() > 0 ? window_hours : cfg.window_hours, arb_out,
                     cfg, session);
        } else if (*il_cmd) {
            il(il_args, session);
        } else if (*route_cmd) {
            route(route_args, cfg, session);
        } else if (*eq_cmd) {
            eq_fit(panel, window_days, fee_bps, eq_out, cfg, session);
        }
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_usage;
    } catch (const format_error& e) {
        session.finish();
        err << "error: " << e.what() << '\n';
        return exit_format;
    } catch (const domain_error& e) {
        session.finish();
        err << "error: " << e.what() << '\n';
        return exit_domain;
    }
    session.finish();
    return exit_ok;
}

}  // namespace mq::cli
