#include "ammx/ledger.hpp"

namespace ammx {

void LedgerState::debit(const AccountId& account, const Amount& raw) {
    if (raw == 0) {
        return;
    }
    const auto it = balances.find(account);
    if (it == balances.end() || it->second < raw) {
        throw Revert("insufficient balance");
    }
    it->second -= raw;
    if (it->second == 0) {
        balances.erase(it);
    }
}

// ---------------------------------------------------------------- WorldState

namespace {

Amount tokens_to_raw(const LedgerState& ledger, const Amount& amount) {
    if (!ledger.rebase) {
        return amount;
    }
    return amount * ledger.rebase->total_share_supply / ledger.rebase->total_token_supply;
}

Amount raw_to_tokens(const LedgerState& ledger, const Amount& raw) {
    if (!ledger.rebase) {
        return raw;
    }
    return raw * ledger.rebase->total_token_supply / ledger.rebase->total_share_supply;
}

}  // namespace

void WorldState::add_token(TokenSpec spec) {
    if (tokens_.contains(spec.id)) {
        throw std::invalid_argument("duplicate token id '" + spec.id.str() + "'");
    }
    Token token;
    if (const auto* rebase = spec.behavior.find<ShareRebase>()) {
        token.ledger.rebase = RebaseState{rebase->initial_token_supply, rebase->initial_share_supply};
    }
    const TokenId id = spec.id;
    const auto holders = spec.holders;
    token.spec = std::make_shared<const TokenSpec>(std::move(spec));
    tokens_.emplace(id, std::move(token));
    for (const auto& [account, amount] : holders) {
        seed(id, account, amount);
    }
}

void WorldState::seed(const TokenId& id, const AccountId& account, const Amount& amount) {
    auto& ledger = token(id).ledger;
    const Amount raw = tokens_to_raw(ledger, amount);
    if (raw_to_tokens(ledger, raw) != amount) {
        throw std::invalid_argument("amount " + to_string(amount) + " of '" + id.str() +
                                    "' is not a whole number of shares");
    }
    ledger.credit(account, raw);
    ledger.initial_supply += raw;
}

void WorldState::add_pool(PoolState pool) {
    if (pools_.contains(pool.id)) {
        throw std::invalid_argument("duplicate pool id '" + pool.id.str() + "'");
    }
    if (!has_token(pool.token_x) || !has_token(pool.token_y)) {
        throw UnknownId("pool '" + pool.id.str() + "' references an unknown token");
    }
    if (pool.token_x == pool.token_y) {
        throw std::invalid_argument("pool '" + pool.id.str() + "' trades a token against itself");
    }
    if (pool.account.empty()) {
        pool.account = AccountId(pool.id.str());
    }
    seed(pool.token_x, pool.account, pool.reserve_x);
    seed(pool.token_y, pool.account, pool.reserve_y);
    const PoolId id = pool.id;
    pools_.emplace(id, std::move(pool));
}

const Token& WorldState::token(const TokenId& id) const {
    const auto it = tokens_.find(id);
    if (it == tokens_.end()) {
        throw UnknownId("unknown token '" + id.str() + "'");
    }
    return it->second;
}

Token& WorldState::token(const TokenId& id) {
    const auto it = tokens_.find(id);
    if (it == tokens_.end()) {
        throw UnknownId("unknown token '" + id.str() + "'");
    }
    return it->second;
}

const PoolState& WorldState::pool(const PoolId& id) const {
    const auto it = pools_.find(id);
    if (it == pools_.end()) {
        throw UnknownId("unknown pool '" + id.str() + "'");
    }
    return it->second;
}

PoolState& WorldState::pool(const PoolId& id) {
    const auto it = pools_.find(id);
    if (it == pools_.end()) {
        throw UnknownId("unknown pool '" + id.str() + "'");
    }
    return it->second;
}

void WorldState::retain(const std::set<TokenId>& keep) {
    std::erase_if(tokens_, [&](const auto& kv) { return !keep.contains(kv.first); });
    std::set<AccountId> dropped;
    std::erase_if(pools_, [&](const auto& kv) {
        const bool drop = !keep.contains(kv.second.token_x) || !keep.contains(kv.second.token_y);
        if (drop) {
            dropped.insert(kv.second.account);
        }
        return drop;
    });
    for (const auto& [_, p] : pools_) {
        dropped.erase(p.account);
    }
    for (const auto& [_, t] : tokens_) {
        if (const auto* fee = t.spec->behavior.find<FeeOnTransfer>(); fee && fee->sink) {
            dropped.erase(*fee->sink);
        }
    }
    if (dropped.empty()) {
        return;
    }
    // Nothing left in this world can reach those accounts; one aggregate
    // holder keeps the supply and makes copies cheap.
    for (auto& [_, t] : tokens_) {
        Amount folded = 0;
        for (const auto& account : dropped) {
            if (const auto it = t.ledger.balances.find(account); it != t.ledger.balances.end()) {
                folded += it->second;
                t.ledger.balances.erase(it);
            }
        }
        t.ledger.credit(kRetiredPools, folded);
    }
}

const PoolState* WorldState::pool_at(const TokenId& token, const AccountId& account) const {
    for (const auto& [_, p] : pools_) {
        if (p.account == account && p.trades(token)) {
            return &p;
        }
    }
    return nullptr;
}

// ------------------------------------------------------------------ Ledger

Amount balance_of(const WorldState& state, const TokenId& token, const AccountId& account) {
    const auto& ledger = state.token(token).ledger;
    return raw_to_tokens(ledger, ledger.raw_balance(account));
}

Amount total_supply(const WorldState& state, const TokenId& token) {
    const auto& ledger = state.token(token).ledger;
    if (ledger.rebase) {
        return ledger.rebase->total_token_supply;
    }
    return ledger.initial_supply + ledger.minted - ledger.burned;
}

Amount transfer_fee(const TokenSpec& spec, const Amount& amount) {
    if (const auto* fee = spec.behavior.find<FeeOnTransfer>()) {
        return amount * fee->rate_bps / 10000;
    }
    return 0;
}

TransferOutcome transfer(WorldState& state, const TokenId& token, const AccountId& from, const AccountId& to,
                         const Amount& amount) {
    Token work = state.token(token);
    const TokenSpec& spec = *work.spec;
    LedgerState& ledger = work.ledger;
    TransferOutcome out;

    // 1. sell-side deflation: the pool's holding shrinks, and its reserve follows
    std::optional<std::pair<PoolId, Amount>> resync;
    if (const auto* deflation = spec.behavior.find<SellSideDeflation>()) {
        if (const PoolState* pool = state.pool_at(token, to)) {
            const Amount held = ledger.raw_balance(to);
            const Amount kept = held * (deflation->den - deflation->num) / deflation->den;
            const Amount removed = held - kept;
            ledger.debit(to, removed);
            ledger.burned += removed;
            out.deflated = removed;
            resync.emplace(pool->id, kept);
        }
    }

    // 2. reward for trading against a pool
    if (const auto* reward = spec.behavior.find<RewardOnDexTrade>()) {
        if (amount > reward->min_amount) {
            std::optional<AccountId> receiver;
            if (state.pool_at(token, from)) {
                receiver = to;
            } else if (state.pool_at(token, to)) {
                receiver = from;
            }
            if (receiver) {
                out.reward = amount * reward->num / reward->den;
                const Amount raw = tokens_to_raw(ledger, out.reward);
                ledger.credit(*receiver, raw);
                ledger.minted += raw;
                out.reward_to = receiver;
            }
        }
    }

    // 3. fee
    out.fee = transfer_fee(spec, amount);
    out.debited = amount;
    out.credited = amount;
    if (const auto* fee = spec.behavior.find<FeeOnTransfer>()) {
        if (fee->mode == FeeMode::exclusive) {
            out.debited = amount + out.fee;
        } else {
            out.credited = amount - out.fee;
        }
    }

    // 4. movement
    ledger.debit(from, tokens_to_raw(ledger, out.debited));
    ledger.credit(to, tokens_to_raw(ledger, out.credited));
    if (out.fee != 0) {
        const auto* fee = spec.behavior.find<FeeOnTransfer>();
        if (fee->sink) {
            ledger.credit(*fee->sink, out.fee);
        } else {
            ledger.burned += out.fee;
        }
    }

    state.token(token) = std::move(work);
    if (resync) {
        state.pool(resync->first).reserve_of(token) = resync->second;
    }
    return out;
}

void burn(WorldState& state, const TokenId& token, const AccountId& caller, const AccountId& from,
          const Amount& amount) {
    Token& t = state.token(token);
    const auto* rule = t.spec->behavior.find<PublicBurn>();
    if (!rule) {
        throw Revert("token has no burn function");
    }
    if (caller != from && !rule->anyone_can_burn_from) {
        throw Revert("unauthorized");
    }
    const Amount raw = tokens_to_raw(t.ledger, amount);
    t.ledger.debit(from, raw);
    t.ledger.burned += raw;
}

void invoke_hook(WorldState& state, const TokenId& token, std::string_view name, const AccountId& caller) {
    Token& t = state.token(token);
    const HookDef* hook = t.spec->hook(name);
    if (!hook) {
        throw Revert("unknown hook '" + std::string(name) + "'");
    }
    std::visit(
        [&](const auto& effect) {
            using T = std::decay_t<decltype(effect)>;
            if constexpr (std::is_same_v<T, RebaseMaintain>) {
                const auto& params = *t.spec->behavior.find<ShareRebase>();
                auto& rebase = *t.ledger.rebase;
                if (!(t.ledger.raw_balance(caller) > params.min_caller_share)) {
                    throw Revert("caller share too small");
                }
                const Amount tokens = rebase.total_token_supply * params.scale_num / params.scale_den;
                const Amount shares = rebase.total_share_supply * params.scale_num / params.scale_den;
                if (tokens == 0 || shares == 0) {
                    throw Revert("rebase supply exhausted");
                }
                rebase.total_token_supply = tokens;
                rebase.total_share_supply = shares;
                t.ledger.credit(caller, params.maintain_reward);
                t.ledger.minted += params.maintain_reward;
            } else if constexpr (std::is_same_v<T, MintToCaller>) {
                const Amount raw = tokens_to_raw(t.ledger, effect.amount);
                t.ledger.credit(caller, raw);
                t.ledger.minted += raw;
            }
        },
        hook->effect);
}

bool supply_conserved(const WorldState& state, const TokenId& token) {
    const auto& ledger = state.token(token).ledger;
    Amount sum = 0;
    for (const auto& [_, raw] : ledger.balances) {
        sum += raw;
    }
    return sum + ledger.burned == ledger.initial_supply + ledger.minted;
}

Amount rebase_rate(const WorldState& state, const TokenId& token) {
    const Token& t = state.token(token);
    if (!t.ledger.rebase) {
        throw std::invalid_argument("token '" + token.str() + "' is not a share-rebase token");
    }
    return pow10(t.spec->decimals) * t.ledger.rebase->total_token_supply / t.ledger.rebase->total_share_supply;
}

}  // namespace ammx
