#include "fixtures.hpp"

#include <stdexcept>

namespace ammx::test {

Amount e18(std::uint64_t n) { return Amount(n) * pow10(18); }

TokenSpec make_token(const std::string& id, std::vector<Behavior> behavior) {
    TokenSpec t;
    t.id = TokenId(id);
    t.behavior.items = std::move(behavior);
    return t;
}

Corpus pair_corpus(PairSetup s) {
    Corpus c;
    c.attacker = kAttacker;
    TokenSpec x = make_token("X");
    x.total_supply = s.reserve_x + s.attacker_x;
    TokenSpec y = std::move(s.y);
    y.id = Y;
    if (s.treasury_y != 0) {
        y.holders[kTreasury] = s.treasury_y;
    }
    y.total_supply = s.reserve_y;
    for (const auto& [_, amount] : y.holders) {
        y.total_supply += amount;
    }
    for (auto& item : y.behavior.items) {
        if (auto* rebase = std::get_if<ShareRebase>(&item)) {
            rebase->initial_token_supply = y.total_supply;
            if (rebase->initial_share_supply == 0) {
                rebase->initial_share_supply = y.total_supply;
            }
        }
    }
    c.tokens = {x, y};
    PoolState p;
    p.id = kPool;
    p.token_x = X;
    p.token_y = Y;
    p.reserve_x = s.reserve_x;
    p.reserve_y = s.reserve_y;
    p.fee_num = s.fee_num;
    p.fee_den = s.fee_den;
    p.account = kPoolAccount;
    c.pools = {p};
    c.endowments[X] = s.attacker_x;
    c.prices.set(X, Rational(1));
    return c;
}

// Built directly rather than through make_targets, so tests may hand the
// attacker some Y up front.
ScanTarget pair_target(PairSetup setup) {
    const Corpus c = pair_corpus(std::move(setup));
    return ScanTarget{kPool.str(), build_world(c), kPool, Y, c.attacker, c.prices};
}

ScanTarget generated_target(std::uint64_t seed, const CorpusCounts& counts, const std::string& token_id) {
    for (auto& t : make_targets(generate_corpus(seed, counts))) {
        if (t.token_y.str() == token_id) {
            return t;
        }
    }
    throw std::invalid_argument("no generated token '" + token_id + "'");
}

ScanTarget burn_drain_target() {
    PairSetup s;
    s.y = make_token("Y", {PublicBurn{true}});
    s.reserve_x = e18(20);
    s.reserve_y = e18(50);
    s.fee_num = 1;
    s.fee_den = 1;
    s.attacker_x = e18(40);
    return pair_target(s);
}

std::vector<Call> burn_drain_calls() {
    return {
        call::Swap{kPool, X, SymbolicArg::constant(e18(40)), kAttacker},
        call::Burn{Y, kPoolAccount, SymbolicArg::constant(parse_amount("8333333333333333334"))},
        call::Sync{kPool},
        call::Swap{kPool, Y, SymbolicArg::balance_of_self(Y), kAttacker},
    };
}

ScanTarget mint_inject_target() {
    PairSetup s;
    s.y.hooks.push_back(HookDef{"airdrop", MintToCaller{e18(30)}});
    s.reserve_x = e18(20);
    s.reserve_y = e18(50);
    s.fee_num = 1;
    s.fee_den = 1;
    s.attacker_x = e18(40);
    return pair_target(s);
}

std::vector<Call> mint_inject_calls() {
    return {
        call::Swap{kPool, X, SymbolicArg::constant(e18(40)), kAttacker},
        call::Hook{Y, "airdrop"},
        call::Swap{kPool, Y, SymbolicArg::balance_of_self(Y), kAttacker},
    };
}

}  // namespace ammx::test
