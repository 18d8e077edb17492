#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ammx/amount.hpp"
#include "ammx/token_spec.hpp"

namespace ammx {

/// Reference to an id that is not present in the WorldState.
class UnknownId : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct RebaseState {
    Amount total_token_supply;
    Amount total_share_supply;
    friend bool operator==(const RebaseState&, const RebaseState&) = default;
};

/// Per-token bookkeeping. Balances are in raw units: shares for share-rebase
/// tokens, base units otherwise.
///
/// Conservation: sum(balances) + burned - minted == initial_supply.
struct LedgerState {
    std::map<AccountId, Amount> balances;
    Amount burned;
    Amount minted;
    Amount initial_supply;
    std::optional<RebaseState> rebase;

    [[nodiscard]] Amount raw_balance(const AccountId& account) const {
        const auto it = balances.find(account);
        return it == balances.end() ? Amount(0) : it->second;
    }
    void credit(const AccountId& account, const Amount& raw) {
        if (raw != 0) {
            balances[account] += raw;
        }
    }
    void debit(const AccountId& account, const Amount& raw);

    friend bool operator==(const LedgerState&, const LedgerState&) = default;
};

struct Token {
    std::shared_ptr<const TokenSpec> spec;
    LedgerState ledger;

    friend bool operator==(const Token& a, const Token& b) {
        return (a.spec == b.spec || (a.spec && b.spec && *a.spec == *b.spec)) && a.ledger == b.ledger;
    }
};

/// Constant-product pair. Reserves are the pair's last synced view of its
/// holdings; ledger balances can drift from them until skim or sync.
struct PoolState {
    PoolId id;
    TokenId token_x;  // the priced ("stable") side
    TokenId token_y;
    Amount reserve_x;
    Amount reserve_y;
    std::uint32_t fee_num = 997;
    std::uint32_t fee_den = 1000;
    AccountId account;

    [[nodiscard]] bool trades(const TokenId& t) const noexcept { return t == token_x || t == token_y; }
    [[nodiscard]] const Amount& reserve_of(const TokenId& t) const { return t == token_x ? reserve_x : reserve_y; }
    Amount& reserve_of(const TokenId& t) { return t == token_x ? reserve_x : reserve_y; }
    [[nodiscard]] const TokenId& other(const TokenId& t) const { return t == token_x ? token_y : token_x; }

    friend bool operator==(const PoolState&, const PoolState&) = default;
};

/// Holder of balances that belonged to pools pruned by WorldState::retain.
inline const AccountId kRetiredPools{"(retired pools)"};

/// Complete simulated chain state. A plain value: copies are independent.
class WorldState {
  public:
    /// Registers a token and seeds its declared holders.
    void add_token(TokenSpec spec);
    /// Registers a pool and seeds the pool account with both reserves.
    void add_pool(PoolState pool);
    /// Adds an initial balance (token units) counted toward the initial supply.
    void seed(const TokenId& token, const AccountId& account, const Amount& amount);

    [[nodiscard]] const Token& token(const TokenId& id) const;
    Token& token(const TokenId& id);
    [[nodiscard]] const PoolState& pool(const PoolId& id) const;
    PoolState& pool(const PoolId& id);
    [[nodiscard]] bool has_token(const TokenId& id) const { return tokens_.contains(id); }
    [[nodiscard]] bool has_pool(const PoolId& id) const { return pools_.contains(id); }

    [[nodiscard]] const std::map<TokenId, Token>& tokens() const noexcept { return tokens_; }
    [[nodiscard]] const std::map<PoolId, PoolState>& pools() const noexcept { return pools_; }
    std::map<PoolId, PoolState>& pools() noexcept { return pools_; }

    /// Drops every token not in `keep` and every pool trading one of them.
    /// Balances held by dropped pools' accounts move to kRetiredPools.
    void retain(const std::set<TokenId>& keep);

    /// Pool that trades `token` and whose ledger identity is `account`.
    [[nodiscard]] const PoolState* pool_at(const TokenId& token, const AccountId& account) const;

    friend bool operator==(const WorldState&, const WorldState&) = default;

  private:
    std::map<TokenId, Token> tokens_;
    std::map<PoolId, PoolState> pools_;
};

}  // namespace ammx
