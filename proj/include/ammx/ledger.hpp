#pragma once

#include <optional>
#include <string_view>

#include "ammx/world.hpp"

namespace ammx {

/// What a transfer actually did, in token units.
struct TransferOutcome {
    Amount debited;    // taken from the sender (amount plus any exclusive fee)
    Amount credited;   // received by the receiver
    Amount fee;        // routed to the fee sink
    Amount reward;     // minted by reward_on_dex_trade
    std::optional<AccountId> reward_to;
    Amount deflated;   // removed from a pool by sell_side_deflation
};

/// Token-unit balance; for share-rebase tokens shares * rate, rounded down.
Amount balance_of(const WorldState& state, const TokenId& token, const AccountId& account);

/// Circulating supply in token units (what a token's totalSupply() reports).
Amount total_supply(const WorldState& state, const TokenId& token);

/// Moves `amount` through the token's behaviour pipeline, in order:
///   1. sell-side deflation, when `to` is a pool account for this token
///   2. dex-trade reward, when an endpoint is a pool account and amount > min
///   3. transfer fee (inclusive or exclusive)
///   4. balance movement
/// Throws Revert on insufficient balance; the state is untouched on throw.
TransferOutcome transfer(WorldState& state, const TokenId& token, const AccountId& from, const AccountId& to,
                         const Amount& amount);

/// burn(from, amount) issued by `caller`. Pool reserves are not touched.
void burn(WorldState& state, const TokenId& token, const AccountId& caller, const AccountId& from,
          const Amount& amount);

/// Runs a named no-argument hook on behalf of `caller`.
void invoke_hook(WorldState& state, const TokenId& token, std::string_view name, const AccountId& caller);

/// Fee charged on a transfer of `amount` (zero for tokens without one).
Amount transfer_fee(const TokenSpec& spec, const Amount& amount);

/// sum(raw balances) + burned - minted == initial supply.
bool supply_conserved(const WorldState& state, const TokenId& token);

/// Token units per whole share scaled by 10^decimals; only for share-rebase tokens.
Amount rebase_rate(const WorldState& state, const TokenId& token);

}  // namespace ammx
