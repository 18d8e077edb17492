#include "ammx/corpusgen.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>

namespace ammx {

namespace {

const TokenId kStable{"USD"};
const AccountId kTreasury{"treasury"};
const AccountId kFeeCollector{"fee-collector"};

class Draw {
  public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    // Modulo draws rather than std distributions: their output is not
    // specified by the standard, and the corpus must not depend on the library.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + rng_() % (hi - lo + 1); }
    bool coin() { return rng_() % 2 == 0; }

  private:
    std::mt19937_64 rng_;
};

Amount whole(std::uint64_t n) { return Amount(n) * pow10(18); }

std::string name(const char* prefix, unsigned i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%03u", prefix, i);
    return buf;
}

struct Builder {
    Corpus corpus;
    Amount stable_in_pools;
    Amount max_reserve_x;

    void add(TokenSpec token, std::uint64_t reserve_x, std::uint64_t reserve_y, std::uint64_t treasury) {
        const Amount rx = whole(reserve_x);
        const Amount ry = whole(reserve_y);
        token.holders[kTreasury] = whole(treasury);
        token.total_supply = ry + whole(treasury);
        for (auto& item : token.behavior.items) {
            if (auto* rebase = std::get_if<ShareRebase>(&item)) {
                rebase->initial_token_supply = token.total_supply;
                rebase->initial_share_supply = token.total_supply / 2;
            }
        }
        PoolState pool;
        pool.id = PoolId("pool-" + token.id.str());
        pool.token_x = kStable;
        pool.token_y = token.id;
        pool.reserve_x = rx;
        pool.reserve_y = ry;
        pool.account = AccountId(pool.id.str());
        corpus.pools.push_back(pool);
        corpus.tokens.push_back(std::move(token));
        stable_in_pools += rx;
        max_reserve_x = std::max(max_reserve_x, rx);
    }
};

TokenSpec token(const std::string& id, std::vector<Behavior> behavior, bool vulnerable, int invariant,
                const char* archetype) {
    TokenSpec t;
    t.id = TokenId(id);
    t.decimals = 18;
    t.behavior.items = std::move(behavior);
    t.label = TokenLabel{vulnerable, invariant, archetype};
    return t;
}

}  // namespace

Corpus generate_corpus(std::uint64_t seed, const CorpusCounts& counts) {
    for (const unsigned n : {counts.anch, counts.shadowfi, counts.deflate, counts.rebase, counts.benign,
                             counts.benign_fot}) {
        if (n > kMaxArchetypeCount) {
            throw std::invalid_argument("archetype count " + std::to_string(n) + " exceeds " +
                                        std::to_string(kMaxArchetypeCount));
        }
    }
    Draw draw(seed);
    Builder b;

    // Reward on every pool-facing transfer above the minimum; skimming the
    // pair into itself compounds the reward.
    for (unsigned i = 0; i < counts.anch; ++i) {
        const RewardOnDexTrade reward{5, 10000, whole(10000)};
        const auto rx = draw.between(20'000, 100'000);
        const auto ry = draw.between(1'000'000, 5'000'000);
        b.add(token(name("anch", i), {reward}, true, 2, "anch"), rx, ry, ry / 10);
    }
    // Anyone may burn from any account, the pair included.
    for (unsigned i = 0; i < counts.shadowfi; ++i) {
        const auto rx = draw.between(5'000, 200'000);
        const auto ry = draw.between(100'000, 10'000'000);
        b.add(token(name("shadowfi", i), {PublicBurn{true}}, true, 1, "shadowfi"), rx, ry, ry / 4);
    }
    // Every transfer into the pair burns a slice of the pair's holdings.
    for (unsigned i = 0; i < counts.deflate; ++i) {
        const SellSideDeflation deflation{draw.between(1, 3), 1000};
        const auto rx = draw.between(10'000, 150'000);
        const auto ry = draw.between(100'000, 10'000'000);
        b.add(token(name("deflate", i), {deflation}, true, 1, "sell-side-deflation"), rx, ry, ry / 4);
    }
    // Public maintenance hook that rescales supplies and pays the caller in
    // shares; repeated calls mint value.
    for (unsigned i = 0; i < counts.rebase; ++i) {
        const auto rx = draw.between(20'000, 60'000);
        const auto ry = 2 * draw.between(50'000, 5'000'000);
        const auto cents = draw.between(50, 80);
        ShareRebase rebase;
        // reward worth `cents` USD at the initial price, 2 tokens per share
        rebase.maintain_reward = Amount(cents) * whole(ry) / (Amount(rx) * 100 * 2);
        rebase.min_caller_share = whole(1);
        rebase.scale_num = 9;
        rebase.scale_den = 10;
        TokenSpec t = token(name("rebase", i), {rebase}, true, 2, "share-rebase");
        t.hooks.push_back(HookDef{"maintainToken", RebaseMaintain{}});
        b.add(std::move(t), rx, ry, 2 * (ry / 8));
    }
    for (unsigned i = 0; i < counts.benign; ++i) {
        const auto rx = draw.between(5'000, 200'000);
        const auto ry = draw.between(10'000, 10'000'000);
        b.add(token(name("benign", i), {}, false, 0, "standard"), rx, ry, ry / 2);
    }
    for (unsigned i = 0; i < counts.benign_fot; ++i) {
        FeeOnTransfer fee;
        fee.rate_bps = static_cast<std::uint32_t>(draw.between(100, 1000));
        fee.mode = FeeMode::inclusive;
        if (draw.coin()) {
            fee.sink = kFeeCollector;
        }
        const auto rx = draw.between(5'000, 200'000);
        const auto ry = draw.between(10'000, 10'000'000);
        b.add(token(name("benign-fot", i), {fee}, false, 0, "fee-on-transfer"), rx, ry, ry / 2);
    }

    TokenSpec stable = token(kStable.str(), {}, false, 0, "stable");
    stable.label.reset();
    const Amount endowment = 2 * b.max_reserve_x + whole(1000);
    stable.total_supply = b.stable_in_pools + endowment;
    b.corpus.tokens.insert(b.corpus.tokens.begin(), std::move(stable));
    b.corpus.endowments[kStable] = endowment;
    b.corpus.prices.set(kStable, Rational(1));
    return b.corpus;
}

}  // namespace ammx
