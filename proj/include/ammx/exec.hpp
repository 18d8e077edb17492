#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ammx/world.hpp"

namespace ammx {

/// Immutable value copy of a WorldState.
class Snapshot {
  public:
    explicit Snapshot(WorldState state) : state_(std::move(state)) {}
    [[nodiscard]] const WorldState& state() const noexcept { return state_; }
    friend bool operator==(const Snapshot&, const Snapshot&) = default;

  private:
    WorldState state_;
};

inline Snapshot take_snapshot(const WorldState& state) { return Snapshot(state); }
inline WorldState restore(const Snapshot& snapshot) { return snapshot.state(); }

/// The attacker and the pool under test; symbolic arguments resolve against it.
struct ExecContext {
    AccountId attacker;
    PoolId pool;
};

// Argument values, resolved against the live state right before each call.
struct SymbolicArg;
namespace arg {
struct Constant { Amount value; };
struct BalanceOfSelf { TokenId token; };
struct BalanceOfPair { TokenId token; };
struct PairBalanceMinusOne { TokenId token; };
/// total_supply - 2 * total_supply / balance_of(pool)
struct BurnSupplyFormula { TokenId token; };
/// Largest a with a + exclusive_fee(a) <= inner; inner itself otherwise.
struct FeeAdjusted {
    TokenId token;
    std::shared_ptr<const SymbolicArg> inner;
};
}  // namespace arg

struct SymbolicArg {
    std::variant<arg::Constant, arg::BalanceOfSelf, arg::BalanceOfPair, arg::PairBalanceMinusOne,
                 arg::BurnSupplyFormula, arg::FeeAdjusted>
        value;

    static SymbolicArg constant(Amount v) { return {arg::Constant{std::move(v)}}; }
    static SymbolicArg balance_of_self(TokenId t) { return {arg::BalanceOfSelf{std::move(t)}}; }
    static SymbolicArg balance_of_pair(TokenId t) { return {arg::BalanceOfPair{std::move(t)}}; }
    static SymbolicArg pair_balance_minus_one(TokenId t) { return {arg::PairBalanceMinusOne{std::move(t)}}; }
    static SymbolicArg burn_supply_formula(TokenId t) { return {arg::BurnSupplyFormula{std::move(t)}}; }
    static SymbolicArg fee_adjusted(TokenId t, SymbolicArg inner) {
        return {arg::FeeAdjusted{std::move(t), std::make_shared<const SymbolicArg>(std::move(inner))}};
    }
};

std::string describe(const SymbolicArg& a);

/// Pure function of the state and context. Throws Revert on division by zero
/// or underflow.
Amount resolve_arg(const SymbolicArg& a, const WorldState& state, const ExecContext& ctx);

/// Largest a with a + floor(a * rate_bps / 10000) <= desired_total, for a
/// token with an exclusive transfer fee; desired_total otherwise.
Amount compute_exclusive_fee_amount(const WorldState& state, const TokenId& token, const Amount& desired_total);

// Calls, issued by ctx.attacker.
namespace call {
struct Transfer { TokenId token; AccountId to; SymbolicArg amount; };
struct Burn { TokenId token; AccountId from; SymbolicArg amount; };
struct Skim { PoolId pool; AccountId to; };
struct Sync { PoolId pool; };
struct Swap { PoolId pool; TokenId input; SymbolicArg amount; AccountId to; };
struct Hook { TokenId token; std::string name; };
}  // namespace call

using Call = std::variant<call::Transfer, call::Burn, call::Skim, call::Sync, call::Swap, call::Hook>;

std::string_view op_name(const Call& c);
std::string describe(const Call& c);

struct TraceEntry {
    Call call;
    std::vector<Amount> args_resolved;
    std::string outcome;
};

struct TxResult {
    bool reverted = false;
    std::string revert_reason;
    std::optional<std::size_t> failed_index;
    std::vector<TraceEntry> trace;
    /// State before the second call and after the second-to-last call.
    std::optional<Snapshot> window_start;
    std::optional<Snapshot> window_end;
    WorldState final_state;
};

struct ExecOptions {
    bool record_trace = true;
    bool record_window = true;
};

/// Executes the calls atomically in order. A revert anywhere yields
/// reverted = true and final_state == initial.
TxResult execute_tx(const WorldState& initial, std::span<const Call> calls, const ExecContext& ctx,
                    ExecOptions options = {});

}  // namespace ammx
