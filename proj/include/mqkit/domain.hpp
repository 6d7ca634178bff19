#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "mqkit/errors.hpp"

namespace mq {

enum class TokenKind { native, erc20 };

struct Token {
    Token(std::string symbol, TokenKind kind = TokenKind::erc20);

    std::string symbol;
    TokenKind kind;

    friend bool operator==(const Token& a, const Token& b) { return a.symbol == b.symbol; }
};

// Base is the X leg, quote the Y leg. Prices are quoted in Y per X.
struct Pair {
    Pair(Token base, Token quote);

    // "ETH-USDC" -> base ETH, quote USDC. The token named native_symbol gets
    // TokenKind::native, every other token is erc20-like.
    static Pair parse(std::string_view text, std::string_view native_symbol = "ETH");

    Pair reversed() const { return Pair(quote, base); }
    std::string name() const { return base.symbol + "-" + quote.symbol; }

    Token base;
    Token quote;

    friend bool operator==(const Pair& a, const Pair& b) {
        return a.base == b.base && a.quote == b.quote;
    }
};

class Price {
public:
    explicit Price(double value);

    double value() const { return value_; }
    Price inverse() const { return Price(1.0 / value_); }

    friend auto operator<=>(const Price&, const Price&) = default;

private:
    double value_;
};

// Basis points; 1 bps = 1e-4.
class Bps {
public:
    constexpr Bps() = default;
    explicit Bps(double value);

    static Bps from_fraction(double fraction) { return Bps(fraction * 1e4); }

    double value() const { return value_; }
    double fraction() const { return value_ * 1e-4; }

    friend Bps operator+(Bps a, Bps b) { return Bps(a.value_ + b.value_); }
    friend auto operator<=>(const Bps&, const Bps&) = default;

private:
    double value_ = 0.0;
};

struct HourStamp {
    std::int64_t epoch_hour = 0;

    friend auto operator<=>(const HourStamp&, const HourStamp&) = default;
};

struct TradeSize {
    TradeSize(double usd, double token_amount);

    double usd;
    double token_amount;
};

// Number of base tokens worth `usd` dollars, given the dollar value of one base token.
double usd_to_token_amount(Price usd_per_base, double usd);

}  // namespace mq
