#include "mqkit/domain.hpp"

#include <cmath>

namespace mq {

Token::Token(std::string symbol, TokenKind kind) : symbol(std::move(symbol)), kind(kind) {
    if (this->symbol.empty()) throw domain_error("token symbol must be non-empty");
}

Pair::Pair(Token base, Token quote) : base(std::move(base)), quote(std::move(quote)) {
    if (this->base == this->quote)
        throw domain_error("pair legs must differ: " + this->base.symbol);
}

Pair Pair::parse(std::string_view text, std::string_view native_symbol) {
    auto dash = text.find('-');
    if (dash == std::string_view::npos || text.find('-', dash + 1) != std::string_view::npos)
        throw domain_error("pair must look like BASE-QUOTE: " + std::string(text));
    auto make = [&](std::string_view s) {
        return Token(std::string(s), s == native_symbol ? TokenKind::native : TokenKind::erc20);
    };
    return Pair(make(text.substr(0, dash)), make(text.substr(dash + 1)));
}

Price::Price(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw domain_error("price must be positive and finite");
}

Bps::Bps(double value) : value_(value) {
    if (!std::isfinite(value)) throw domain_error("bps value must be finite");
}

TradeSize::TradeSize(double usd, double token_amount) : usd(usd), token_amount(token_amount) {
    if (!(usd > 0.0) || !(token_amount > 0.0))
        throw domain_error("trade size must be positive");
}

double usd_to_token_amount(Price usd_per_base, double usd) {
    if (!(usd > 0.0) || !std::isfinite(usd)) throw domain_error("usd amount must be positive");
    return usd / usd_per_base.value();
}

}  // namespace mq
