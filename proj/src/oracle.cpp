#include "ammx/oracle.hpp"

#include "ammx/ledger.hpp"

#include <vector>

namespace ammx {

void PriceTable::set(const TokenId& token, Rational price) {
    if (price <= 0) {
        throw std::invalid_argument("price of '" + token.str() + "' must be positive");
    }
    prices_[token] = std::move(price);
}

std::optional<Rational> PriceTable::price(const TokenId& token) const {
    const auto it = prices_.find(token);
    if (it == prices_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<Rational> PriceTable::usd_value(const WorldState& state, const TokenId& token,
                                              const Amount& amount) const {
    const auto p = price(token);
    if (!p) {
        return std::nullopt;
    }
    const mp::cpp_int scale(pow10(state.token(token).spec->decimals));
    return Rational(mp::cpp_int(amount), scale) * *p;
}

bool check_invariant1(const Snapshot& before, const Snapshot& after, const PoolId& pool, const TokenId& token_y) {
    const AccountId& account = before.state().pool(pool).account;
    return balance_of(after.state(), token_y, account) < balance_of(before.state(), token_y, account);
}

bool check_invariant2(const Snapshot& before, const Snapshot& after, const AccountId& attacker,
                      const TokenId& token_y) {
    return balance_of(after.state(), token_y, attacker) > balance_of(before.state(), token_y, attacker);
}

Verdict evaluate_profit(const Snapshot& initial, const Snapshot& final, const AccountId& attacker,
                        const PriceTable& prices, const Rational& threshold_usd) {
    return evaluate_profit(initial.state(), final.state(), attacker, prices, threshold_usd);
}

Verdict evaluate_profit(const WorldState& initial, const WorldState& final, const AccountId& attacker,
                        const PriceTable& prices, const Rational& threshold_usd) {
    Verdict v;
    std::vector<std::pair<TokenId, Amount>> gains;
    for (const auto& [id, _] : initial.tokens()) {
        const Amount a = balance_of(initial, id, attacker);
        const Amount b = balance_of(final, id, attacker);
        if (b < a) {
            return v;
        }
        if (b > a) {
            gains.emplace_back(id, b - a);
        }
    }
    if (gains.empty()) {
        return v;
    }
    // Several tokens may rise (e.g. reward dust left after the closing swap);
    // the verdict is taken with respect to the most valuable priced one.
    std::optional<Rational> best;
    for (const auto& [id, gain] : gains) {
        const auto usd = prices.usd_value(final, id, gain);
        if (usd && (!best || *usd > *best)) {
            best = usd;
            v.profit_token = id;
            v.profit_amount = gain;
        }
    }
    if (!best) {
        v.unpriceable = true;
        v.profit_token = gains.front().first;
        v.profit_amount = gains.front().second;
        return v;
    }
    v.profit_usd = *best;
    v.profitable = *best > threshold_usd;
    return v;
}

}  // namespace ammx
