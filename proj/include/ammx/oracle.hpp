#pragma once

#include <map>
#include <optional>

#include "ammx/exec.hpp"

namespace ammx {

/// USD price per whole token (10^decimals base units).
class PriceTable {
  public:
    PriceTable() = default;
    explicit PriceTable(std::map<TokenId, Rational> prices) : prices_(std::move(prices)) {}

    void set(const TokenId& token, Rational price);
    [[nodiscard]] std::optional<Rational> price(const TokenId& token) const;
    [[nodiscard]] const std::map<TokenId, Rational>& entries() const noexcept { return prices_; }

    /// USD value of `amount` base units of `token`; nullopt if unpriced.
    [[nodiscard]] std::optional<Rational> usd_value(const WorldState& state, const TokenId& token,
                                                    const Amount& amount) const;

  private:
    std::map<TokenId, Rational> prices_;
};

struct Verdict {
    bool invariant1_broken = false;
    bool invariant2_broken = false;
    bool profitable = false;
    bool unpriceable = false;
    std::optional<TokenId> profit_token;
    Amount profit_amount;
    Rational profit_usd;
};

/// Pool's token_y balance strictly decreased between the two snapshots.
bool check_invariant1(const Snapshot& before, const Snapshot& after, const PoolId& pool, const TokenId& token_y);

/// Attacker's token_y balance strictly increased between the two snapshots.
bool check_invariant2(const Snapshot& before, const Snapshot& after, const AccountId& attacker,
                      const TokenId& token_y);

/// Profitable with respect to token X iff the attacker's X balance strictly
/// increased, no token's balance decreased, and the X gain is worth more
/// than threshold_usd. X is the most valuable priced token that increased.
Verdict evaluate_profit(const Snapshot& initial, const Snapshot& final, const AccountId& attacker,
                        const PriceTable& prices, const Rational& threshold_usd);
Verdict evaluate_profit(const WorldState& initial, const WorldState& final, const AccountId& attacker,
                        const PriceTable& prices, const Rational& threshold_usd);

}  // namespace ammx
