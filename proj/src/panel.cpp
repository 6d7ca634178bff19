#include "mqkit/panel.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace mq {

namespace {

struct PairQuote {
    std::string base;
    std::string quote;
    double price;  // quote per base
};

std::vector<PairQuote> quotes_at(HourStamp stamp, const PanelInputs& in) {
    std::vector<PairQuote> out;
    for (const CexVenue& venue : in.cex)
        for (const auto& book : venue.books)
            if (book.stamp() == stamp && !book.bids().empty() && !book.asks().empty())
                out.push_back({book.pair().base.symbol, book.pair().quote.symbol,
                               lob::mid_price(book).value()});
    for (const auto& [s, pool] : in.pools_v2)
        if (s == stamp)
            out.push_back({pool.pair.base.symbol, pool.pair.quote.symbol,
                           v2::quoted_price(pool).value()});
    for (const auto& [s, pool] : in.pools_v3)
        if (s == stamp)
            out.push_back(
                {pool.pair.base.symbol, pool.pair.quote.symbol, pool.current_price.value()});
    return out;
}

std::optional<double> gas_usd(const PanelInputs& in, std::int64_t units, HourStamp stamp) {
    try {
        return gas_cost_usd(units, stamp, in.gas);
    } catch (const coverage_error&) {
        return std::nullopt;
    }
}

const CostBreakdown* cheapest(const std::vector<const PanelRow*>& rows) {
    const PanelRow* best = nullptr;
    for (const PanelRow* r : rows)
        if (!best || r->cost.total < best->cost.total) best = r;
    return best ? &best->cost : nullptr;
}

}  // namespace

std::map<std::string, double> usd_prices_at(HourStamp stamp, const PanelInputs& inputs,
                                            const std::set<std::string>& stables) {
    std::map<std::string, double> usd;
    for (const auto& s : stables) usd[s] = 1.0;

    const auto quotes = quotes_at(stamp, inputs);
    try {
        const double native = inputs.gas.at(stamp).native_usd.value();
        auto mark_native = [&](const Pair& p) {
            for (const Token* t : {&p.base, &p.quote})
                if (t->kind == TokenKind::native) usd.emplace(t->symbol, native);
        };
        for (const auto& v : inputs.cex)
            for (const auto& b : v.books) mark_native(b.pair());
        for (const auto& [s, p] : inputs.pools_v2) mark_native(p.pair);
        for (const auto& [s, p] : inputs.pools_v3) mark_native(p.pair);
    } catch (const coverage_error&) {
    }

    for (bool changed = true; changed;) {
        changed = false;
        for (const PairQuote& q : quotes) {
            const bool has_base = usd.contains(q.base);
            const bool has_quote = usd.contains(q.quote);
            if (has_base == has_quote) continue;
            if (has_quote)
                usd[q.base] = q.price * usd[q.quote];
            else
                usd[q.quote] = usd[q.base] / q.price;
            changed = true;
        }
    }
    return usd;
}

std::vector<PanelRow> tc_panel(const PanelInputs& in, const PanelOptions& opt) {
    std::set<HourStamp> hours;
    std::set<std::string> pairs(opt.pairs.begin(), opt.pairs.end());
    const bool all_pairs = pairs.empty();
    auto note = [&](HourStamp s, const Pair& p) {
        hours.insert(s);
        if (all_pairs) pairs.insert(p.name());
    };
    for (const auto& [s, p] : in.pools_v2) note(s, p.pair);
    for (const auto& [s, p] : in.pools_v3) note(s, p.pair);
    for (const auto& v : in.cex)
        for (const auto& b : v.books) note(b.stamp(), b.pair());

    std::vector<PanelRow> rows;
    for (HourStamp hour : hours) {
        const auto usd = usd_prices_at(hour, in, opt.usd_stables);
        auto usd_of = [&](const Token& t) -> std::optional<Price> {
            auto it = usd.find(t.symbol);
            if (it == usd.end()) return std::nullopt;
            return Price(it->second);
        };

        for (const std::string& pair : pairs) {
            const v2::PoolState* pool_v2 = nullptr;
            for (const auto& [s, p] : in.pools_v2)
                if (s == hour && p.pair.name() == pair) {
                    pool_v2 = &p;
                    break;
                }
            std::vector<v3::PoolState> pools_v3;
            for (const auto& [s, p] : in.pools_v3)
                if (s == hour && p.pair.name() == pair) pools_v3.push_back(p);

            const auto gas_v2 = gas_usd(in, in.gas_units.swap_units_v2, hour);
            const auto gas_v3 = gas_usd(in, in.gas_units.swap_units_v3, hour);

            for (double size : opt.sizes) {
                std::vector<PanelRow> dex;
                std::vector<PanelRow> cex;

                if (pool_v2 && gas_v2) {
                    const auto ux = usd_of(pool_v2->pair.base);
                    const auto uy = usd_of(pool_v2->pair.quote);
                    if (ux && uy) {
                        const Bps spread = v2::ba_spread(*pool_v2, size, *ux, *uy);
                        dex.push_back({hour, pair, size,
                                       tc_dex(spread, Bps::from_fraction(pool_v2->fee), *gas_v2,
                                              size, venue_v2),
                                       ""});
                    }
                }
                if (!pools_v3.empty() && gas_v3) {
                    const auto ux = usd_of(pools_v3.front().pair.base);
                    const auto uy = usd_of(pools_v3.front().pair.quote);
                    if (ux && uy) {
                        try {
                            auto choice = v3::best_pool(pools_v3, {}, size, *gas_v3, *ux, *uy);
                            std::string tier = std::to_string(
                                v3::to_bps(pools_v3[choice.id].fee_tier)) + "bps";
                            choice.cost.venue = venue_v3;
                            dex.push_back({hour, pair, size, choice.cost, tier});
                        } catch (const insufficient_liquidity_error&) {
                        }
                    }
                }

                for (const CexVenue& venue : in.cex) {
                    for (const auto& book : venue.books) {
                        if (book.stamp() != hour || book.pair().name() != pair) continue;
                        try {
                            const auto uy = usd_of(book.pair().quote);
                            if (!uy) break;
                            const double mid = lob::mid_price(book).value();
                            const double dx = size / (mid * uy->value());
                            const Bps spread = lob::spread_lob(book, dx);
                            double deposit = 0.0;
                            double withdraw = 0.0;
                            if (opt.include_dw) {
                                const auto g = gas_usd(
                                    in, in.gas_units.deposit_units(book.pair().base.kind), hour);
                                if (!g) break;
                                deposit = *g;
                                withdraw = in.withdraw_fees.at(book.pair().quote.symbol, hour) *
                                           uy->value();
                            }
                            cex.push_back({hour, pair, size,
                                           tc_cex(spread, venue.taker_fee, deposit, withdraw,
                                                  size, venue.name),
                                           ""});
                        } catch (const domain_error&) {
                            // depth, empty side or missing withdrawal fee: omit
                        }
                        break;
                    }
                }

                auto add_best = [&](const std::vector<PanelRow>& group, const char* name) {
                    std::vector<const PanelRow*> ptrs;
                    for (const auto& r : group) ptrs.push_back(&r);
                    if (const CostBreakdown* best = cheapest(ptrs)) {
                        CostBreakdown c = *best;
                        c.venue = name;
                        rows.push_back({hour, pair, size, c, best->venue});
                    }
                };
                add_best(dex, venue_best_dex);
                add_best(cex, venue_best_cex);
                for (auto& r : dex) rows.push_back(std::move(r));
                for (auto& r : cex) rows.push_back(std::move(r));
            }
        }
    }

    std::ranges::stable_sort(rows, [](const PanelRow& a, const PanelRow& b) {
        return std::tie(a.cost.venue, a.pair, a.size_usd, a.stamp) <
               std::tie(b.cost.venue, b.pair, b.size_usd, b.stamp);
    });
    return rows;
}

std::vector<SummaryRow> summarize_panel(std::span<const PanelRow> rows) {
    std::vector<SummaryRow> out;
    for (const PanelRow& r : rows) {
        if (out.empty() || out.back().venue != r.cost.venue || out.back().pair != r.pair ||
            out.back().size_usd != r.size_usd)
            out.push_back({r.cost.venue, r.pair, r.size_usd, 0, 0, 0, 0, 0});
        SummaryRow& s = out.back();
        s.spread_bps += r.cost.spread.value();
        s.fee_bps += r.cost.exchange_fee.value();
        s.settlement_bps += r.cost.settlement.value();
        s.total_bps += r.cost.total.value();
        ++s.hours;
    }
    for (SummaryRow& s : out) {
        const auto n = static_cast<double>(s.hours);
        s.spread_bps /= n;
        s.fee_bps /= n;
        s.settlement_bps /= n;
        s.total_bps /= n;
    }
    return out;
}

}  // namespace mq
