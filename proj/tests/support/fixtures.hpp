#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ammx/corpus.hpp"
#include "ammx/corpusgen.hpp"
#include "ammx/ledger.hpp"
#include "ammx/pool.hpp"

namespace ammx::test {

inline const TokenId X{"X"};
inline const TokenId Y{"Y"};
inline const PoolId kPool{"pool"};
inline const AccountId kPoolAccount{"pool"};
inline const AccountId kAttacker{"attacker"};
inline const AccountId kTreasury{"treasury"};

Amount e18(std::uint64_t n);

TokenSpec make_token(const std::string& id, std::vector<Behavior> behavior = {});

/// One X/Y pool, X priced at 1 USD, attacker endowed with X only.
struct PairSetup {
    TokenSpec y = make_token("Y");
    Amount reserve_x = e18(10'000);
    Amount reserve_y = e18(10'000);
    std::uint32_t fee_num = 997;
    std::uint32_t fee_den = 1000;
    Amount attacker_x = e18(30'000);
    Amount treasury_y = 0;
};

/// Fills in total supplies (and share-rebase supplies) from the balances.
Corpus pair_corpus(PairSetup setup);
ScanTarget pair_target(PairSetup setup);

/// A single pool of a generated corpus, picked by token id.
ScanTarget generated_target(std::uint64_t seed, const CorpusCounts& counts, const std::string& token_id);

// Fee-free pool (20, 50) with a publicly burnable Y; attacker holds 40 X.
ScanTarget burn_drain_target();
// Buy with 40 X, burn pool Y down to k ~ 500, sync, sell all Y.
std::vector<Call> burn_drain_calls();
// Same pool; Y has a hook minting 30 Y to its caller.
ScanTarget mint_inject_target();
// Buy with 40 X, call the minting hook, sell all Y.
std::vector<Call> mint_inject_calls();

}  // namespace ammx::test
