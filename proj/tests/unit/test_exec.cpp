#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace ammx::test {
namespace {

const ExecContext ctx{kAttacker, kPool};

TEST(Snapshot, RoundTripAndValueSemantics) {
    WorldState w = pair_target({}).world;
    const Snapshot a = take_snapshot(w);
    const Snapshot b = take_snapshot(w);
    EXPECT_EQ(a, b);
    transfer(w, X, kAttacker, kPoolAccount, 5);
    EXPECT_NE(take_snapshot(w), a);
    EXPECT_NE(a.state(), w);
    w = restore(a);
    EXPECT_EQ(w, a.state());
    EXPECT_EQ(take_snapshot(w), b);
}

TEST(ResolveArg, ConstantsAndBalances) {
    PairSetup s;
    s.reserve_y = 500;
    WorldState w = pair_target(s).world;
    EXPECT_EQ(resolve_arg(SymbolicArg::constant(0), w, ctx), 0);
    EXPECT_EQ(resolve_arg(SymbolicArg::balance_of_pair(Y), w, ctx), 500);
    EXPECT_EQ(resolve_arg(SymbolicArg::pair_balance_minus_one(Y), w, ctx), 499);
    EXPECT_EQ(resolve_arg(SymbolicArg::balance_of_self(X), w, ctx), s.attacker_x);
}

TEST(ResolveArg, FreshAfterBalanceChange) {
    PairSetup s;
    s.y = make_token("Y", {PublicBurn{true}});
    s.reserve_y = 500;
    WorldState w = pair_target(s).world;
    const SymbolicArg pair = SymbolicArg::balance_of_pair(Y);
    EXPECT_EQ(resolve_arg(pair, w, ctx), 500);
    burn(w, Y, kAttacker, kPoolAccount, 490);
    EXPECT_EQ(resolve_arg(pair, w, ctx), 10);

    // The same call list re-resolves between calls.
    const std::vector<Call> calls{call::Burn{Y, kPoolAccount, SymbolicArg::constant(5)},
                                  call::Burn{Y, kPoolAccount, SymbolicArg::pair_balance_minus_one(Y)}};
    const TxResult tx = execute_tx(w, calls, ctx);
    ASSERT_FALSE(tx.reverted) << tx.revert_reason;
    EXPECT_EQ(tx.trace[1].args_resolved.at(0), 4);
    EXPECT_EQ(balance_of(tx.final_state, Y, kPoolAccount), 1);
}

TEST(ResolveArg, BurnSupplyFormula) {
    // 1000 - 2*1000/4
    PairSetup s;
    s.reserve_y = 4;
    s.treasury_y = 996;
    const WorldState w = pair_target(s).world;
    ASSERT_EQ(total_supply(w, Y), 1000);
    EXPECT_EQ(resolve_arg(SymbolicArg::burn_supply_formula(Y), w, ctx), 500);
}

TEST(ResolveArg, ErrorsAreReverts) {
    PairSetup s;
    s.y = make_token("Y", {PublicBurn{true}});
    s.reserve_y = 1;
    s.treasury_y = 1;
    WorldState w = pair_target(s).world;
    // 2 - 2*2/1 underflows
    EXPECT_THROW(resolve_arg(SymbolicArg::burn_supply_formula(Y), w, ctx), Revert);
    burn(w, Y, kAttacker, kPoolAccount, 1);
    EXPECT_THROW(resolve_arg(SymbolicArg::pair_balance_minus_one(Y), w, ctx), Revert);
    EXPECT_THROW(resolve_arg(SymbolicArg::burn_supply_formula(Y), w, ctx), Revert);
}

WorldState fee_world(std::uint32_t rate, FeeMode mode) {
    PairSetup s;
    s.y = make_token("Y", {FeeOnTransfer{rate, mode, std::nullopt}});
    return pair_target(s).world;
}

TEST(ExclusiveFeeAmount, Examples) {
    const WorldState ten = fee_world(1000, FeeMode::exclusive);
    EXPECT_EQ(compute_exclusive_fee_amount(ten, Y, 110), 100);
    EXPECT_EQ(compute_exclusive_fee_amount(ten, Y, 109), 99);
    EXPECT_EQ(compute_exclusive_fee_amount(ten, Y, 0), 0);
    EXPECT_EQ(compute_exclusive_fee_amount(fee_world(0, FeeMode::exclusive), Y, 12345), 12345);
    // not exclusive: unchanged
    EXPECT_EQ(compute_exclusive_fee_amount(fee_world(1000, FeeMode::inclusive), Y, 110), 110);
}

TEST(ExclusiveFeeAmount, MatchesOracleExhaustivelyOnSmallTotals) {
    for (const std::uint32_t rate : {1u, 7u, 250u, 1000u, 3333u, 9999u, 10000u}) {
        const WorldState w = fee_world(rate, FeeMode::exclusive);
        for (unsigned total = 0; total <= 400; ++total) {
            const Amount a = compute_exclusive_fee_amount(w, Y, total);
            ASSERT_EQ(a, oracle_exclusive_fee_amount(total, rate)) << "rate " << rate << " total " << total;
            ASSERT_LE(a + oracle_fee(a, rate), total);
            ASSERT_GT(a + 1 + oracle_fee(a + 1, rate), total);
        }
    }
}

TEST(ExclusiveFeeAmount, FeeAdjustedArgLetsFullBalanceMove) {
    PairSetup s;
    s.y = make_token("Y", {FeeOnTransfer{300, FeeMode::exclusive, std::nullopt}});
    s.y.holders[kAttacker] = 10'000;
    const WorldState w = pair_target(s).world;
    const std::vector<Call> raw{call::Transfer{Y, kPoolAccount, SymbolicArg::balance_of_self(Y)}};
    EXPECT_TRUE(execute_tx(w, raw, ctx).reverted);
    const std::vector<Call> adjusted{
        call::Transfer{Y, kPoolAccount, SymbolicArg::fee_adjusted(Y, SymbolicArg::balance_of_self(Y))}};
    const TxResult tx = execute_tx(w, adjusted, ctx);
    ASSERT_FALSE(tx.reverted) << tx.revert_reason;
    EXPECT_EQ(tx.trace[0].args_resolved[0], oracle_exclusive_fee_amount(10'000, 300));
}

TEST(ExecuteTx, StandardSwapRoundTrip) {
    const ScanTarget t = pair_target({});
    const std::vector<Call> calls{call::Swap{kPool, X, SymbolicArg::constant(e18(100)), kAttacker},
                                  call::Swap{kPool, Y, SymbolicArg::balance_of_self(Y), kAttacker}};
    const TxResult tx = execute_tx(t.world, calls, ctx);
    ASSERT_FALSE(tx.reverted) << tx.revert_reason;
    ASSERT_EQ(tx.trace.size(), 2u);
    const Amount y_out = oracle_amount_out(e18(100), e18(10'000), e18(10'000), 997, 1000);
    EXPECT_EQ(tx.trace[0].args_resolved[0], e18(100));
    EXPECT_EQ(tx.trace[1].args_resolved[0], y_out);
    const Amount x_back = oracle_amount_out(y_out, e18(10'000) - y_out, e18(10'100), 997, 1000);
    EXPECT_EQ(balance_of(tx.final_state, X, kAttacker), e18(30'000) - e18(100) + x_back);
    EXPECT_EQ(balance_of(tx.final_state, Y, kAttacker), 0);
}

TEST(ExecuteTx, RevertRestoresInitialStateExactly) {
    const ScanTarget t = pair_target({});
    const std::vector<Call> calls{call::Swap{kPool, X, SymbolicArg::constant(e18(100)), kAttacker},
                                  call::Transfer{Y, kPoolAccount, SymbolicArg::constant(1)},
                                  call::Transfer{Y, kPoolAccount, SymbolicArg::constant(e18(1'000'000))},
                                  call::Sync{kPool}};
    const TxResult tx = execute_tx(t.world, calls, ctx);
    EXPECT_TRUE(tx.reverted);
    EXPECT_EQ(tx.failed_index, 2u);
    EXPECT_EQ(tx.revert_reason, "insufficient balance");
    EXPECT_EQ(tx.final_state, t.world);
    EXPECT_FALSE(tx.window_start.has_value());
}

TEST(ExecuteTx, OverflowBecomesRevert) {
    const ScanTarget t = pair_target({});
    const Amount huge = parse_amount("100000000000000000000000000000000000000000000000000000000000000000000000000");
    const std::vector<Call> calls{call::Swap{kPool, X, SymbolicArg::constant(huge), kAttacker}};
    const TxResult tx = execute_tx(t.world, calls, ctx);
    EXPECT_TRUE(tx.reverted);
    EXPECT_EQ(tx.final_state, t.world);
}

TEST(ExecuteTx, ShadowFiReplayProfits) {
    PairSetup s;
    s.y = make_token("Y", {PublicBurn{true}});
    const ScanTarget t = pair_target(s);
    const std::vector<Call> calls{call::Swap{kPool, X, SymbolicArg::constant(e18(100)), kAttacker},
                                  call::Burn{Y, kPoolAccount, SymbolicArg::pair_balance_minus_one(Y)},
                                  call::Sync{kPool},
                                  call::Swap{kPool, Y, SymbolicArg::balance_of_self(Y), kAttacker}};
    const TxResult tx = execute_tx(t.world, calls, ctx);
    ASSERT_FALSE(tx.reverted) << tx.revert_reason;
    EXPECT_GT(balance_of(tx.final_state, X, kAttacker), s.attacker_x);
    EXPECT_EQ(tx.final_state.pool(kPool).reserve_y, balance_of(tx.final_state, Y, kPoolAccount));
}

TEST(ExecuteTx, WindowBracketsTheBody) {
    const ScanTarget t = pair_target({});
    const std::vector<Call> calls{call::Swap{kPool, X, SymbolicArg::constant(e18(100)), kAttacker},
                                  call::Transfer{Y, kPoolAccount, SymbolicArg::constant(3)},
                                  call::Skim{kPool, kAttacker},
                                  call::Swap{kPool, Y, SymbolicArg::balance_of_self(Y), kAttacker}};
    const TxResult tx = execute_tx(t.world, calls, ctx);
    ASSERT_FALSE(tx.reverted);
    ASSERT_TRUE(tx.window_start && tx.window_end);
    // before call 2: after the buy
    WorldState after_buy = t.world;
    swap_exact_in(after_buy, kPool, X, e18(100), kAttacker, kAttacker);
    EXPECT_EQ(tx.window_start->state(), after_buy);
    EXPECT_EQ(tx.window_end->state(), after_buy);  // the body is neutral here
}

TEST(ExecuteTx, Deterministic) {
    const ScanTarget t = burn_drain_target();
    const TxResult a = execute_tx(t.world, burn_drain_calls(), ctx);
    const TxResult b = execute_tx(t.world, burn_drain_calls(), ctx);
    EXPECT_EQ(a.final_state, b.final_state);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        EXPECT_EQ(a.trace[i].args_resolved, b.trace[i].args_resolved);
        EXPECT_EQ(a.trace[i].outcome, b.trace[i].outcome);
    }
}

TEST(Describe, RendersCalls) {
    EXPECT_EQ(describe(Call{call::Sync{kPool}}), "pool.sync()");
    EXPECT_EQ(op_name(Call{call::Hook{Y, "m"}}), "hook");
    EXPECT_EQ(describe(SymbolicArg::pair_balance_minus_one(Y)).empty(), false);
}

}  // namespace
}  // namespace ammx::test
