#include "ammx/exec.hpp"

#include <sstream>

#include "ammx/ledger.hpp"
#include "ammx/pool.hpp"

namespace ammx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

Amount compute_exclusive_fee_amount(const WorldState& state, const TokenId& token, const Amount& desired_total) {
    const auto* fee = state.token(token).spec->behavior.find<FeeOnTransfer>();
    if (!fee || fee->mode != FeeMode::exclusive || fee->rate_bps == 0) {
        return desired_total;
    }
    const auto cost = [&](const Amount& a) { return a + a * fee->rate_bps / 10000; };
    Amount a = desired_total * 10000 / (10000 + fee->rate_bps);
    while (a < desired_total && cost(a + 1) <= desired_total) {
        ++a;
    }
    return a;
}

Amount resolve_arg(const SymbolicArg& a, const WorldState& state, const ExecContext& ctx) {
    const auto pair_account = [&] { return state.pool(ctx.pool).account; };
    return std::visit(
        overloaded{
            [](const arg::Constant& c) { return c.value; },
            [&](const arg::BalanceOfSelf& b) { return balance_of(state, b.token, ctx.attacker); },
            [&](const arg::BalanceOfPair& b) { return balance_of(state, b.token, pair_account()); },
            [&](const arg::PairBalanceMinusOne& b) {
                const Amount held = balance_of(state, b.token, pair_account());
                if (held == 0) {
                    throw Revert("pair balance is zero");
                }
                return Amount(held - 1);
            },
            [&](const arg::BurnSupplyFormula& b) {
                const Amount held = balance_of(state, b.token, pair_account());
                if (held == 0) {
                    throw Revert("division by zero");
                }
                const Amount supply = total_supply(state, b.token);
                const Amount cut = 2 * supply / held;
                if (cut > supply) {
                    throw Revert("burn amount underflow");
                }
                return Amount(supply - cut);
            },
            [&](const arg::FeeAdjusted& f) {
                return compute_exclusive_fee_amount(state, f.token, resolve_arg(*f.inner, state, ctx));
            },
        },
        a.value);
}

std::string describe(const SymbolicArg& a) {
    return std::visit(
        overloaded{
            [](const arg::Constant& c) { return to_string(c.value); },
            [](const arg::BalanceOfSelf& b) { return b.token.str() + ".balanceOf(this)"; },
            [](const arg::BalanceOfPair& b) { return b.token.str() + ".balanceOf(pair)"; },
            [](const arg::PairBalanceMinusOne& b) { return b.token.str() + ".balanceOf(pair)-1"; },
            [](const arg::BurnSupplyFormula& b) {
                return b.token.str() + ".totalSupply()-2*" + b.token.str() + ".totalSupply()/" + b.token.str() +
                       ".balanceOf(pair)";
            },
            [](const arg::FeeAdjusted& f) { return "feeAdjusted(" + describe(*f.inner) + ")"; },
        },
        a.value);
}

std::string_view op_name(const Call& c) {
    return std::visit(overloaded{
                          [](const call::Transfer&) { return std::string_view("transfer"); },
                          [](const call::Burn&) { return std::string_view("burn"); },
                          [](const call::Skim&) { return std::string_view("skim"); },
                          [](const call::Sync&) { return std::string_view("sync"); },
                          [](const call::Swap&) { return std::string_view("swap"); },
                          [](const call::Hook&) { return std::string_view("hook"); },
                      },
                      c);
}

std::string describe(const Call& c) {
    return std::visit(
        overloaded{
            [](const call::Transfer& t) {
                return t.token.str() + ".transfer(" + t.to.str() + ", " + describe(t.amount) + ")";
            },
            [](const call::Burn& b) { return b.token.str() + ".burn(" + b.from.str() + ", " + describe(b.amount) + ")"; },
            [](const call::Skim& s) { return s.pool.str() + ".skim(" + s.to.str() + ")"; },
            [](const call::Sync& s) { return s.pool.str() + ".sync()"; },
            [](const call::Swap& s) {
                return s.pool.str() + ".swap(" + s.input.str() + ", " + describe(s.amount) + ", " + s.to.str() + ")";
            },
            [](const call::Hook& h) { return h.token.str() + "." + h.name + "()"; },
        },
        c);
}

namespace {

// Applies one call to `state`, returning resolved arguments and an outcome note.
std::pair<std::vector<Amount>, std::string> apply(WorldState& state, const Call& c, const ExecContext& ctx) {
    const AccountId& self = ctx.attacker;
    return std::visit(
        overloaded{
            [&](const call::Transfer& t) -> std::pair<std::vector<Amount>, std::string> {
                const Amount amount = resolve_arg(t.amount, state, ctx);
                const TransferOutcome out = transfer(state, t.token, self, t.to, amount);
                std::string note = "credited=" + to_string(out.credited);
                if (out.fee != 0) note += " fee=" + to_string(out.fee);
                if (out.reward != 0) note += " reward=" + to_string(out.reward) + "->" + out.reward_to->str();
                if (out.deflated != 0) note += " deflated=" + to_string(out.deflated);
                return {{amount}, note};
            },
            [&](const call::Burn& b) -> std::pair<std::vector<Amount>, std::string> {
                const Amount amount = resolve_arg(b.amount, state, ctx);
                burn(state, b.token, self, b.from, amount);
                return {{amount}, "burned=" + to_string(amount)};
            },
            [&](const call::Skim& s) -> std::pair<std::vector<Amount>, std::string> {
                const auto [dx, dy] = skim(state, s.pool, s.to);
                return {{}, "skimmed_x=" + to_string(dx) + " skimmed_y=" + to_string(dy)};
            },
            [&](const call::Sync& s) -> std::pair<std::vector<Amount>, std::string> {
                sync(state, s.pool);
                const PoolState& p = state.pool(s.pool);
                return {{}, "reserve_x=" + to_string(p.reserve_x) + " reserve_y=" + to_string(p.reserve_y)};
            },
            [&](const call::Swap& s) -> std::pair<std::vector<Amount>, std::string> {
                const Amount amount = resolve_arg(s.amount, state, ctx);
                const Amount out = swap_exact_in(state, s.pool, s.input, amount, self, s.to);
                return {{amount}, "out=" + to_string(out)};
            },
            [&](const call::Hook& h) -> std::pair<std::vector<Amount>, std::string> {
                invoke_hook(state, h.token, h.name, self);
                return {{}, "ok"};
            },
        },
        c);
}

}  // namespace

TxResult execute_tx(const WorldState& initial, std::span<const Call> calls, const ExecContext& ctx,
                    ExecOptions options) {
    TxResult result;
    result.final_state = initial;
    WorldState& live = result.final_state;
    const std::size_t n = calls.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (options.record_window && n >= 2 && i == 1) {
            result.window_start.emplace(live);
        }
        std::string failure;
        try {
            auto [args, note] = apply(live, calls[i], ctx);
            if (options.record_trace) {
                result.trace.push_back(TraceEntry{calls[i], std::move(args), std::move(note)});
            }
        } catch (const Revert& e) {
            failure = e.what();
        } catch (const std::overflow_error&) {
            failure = "arithmetic overflow";
        } catch (const std::range_error&) {
            failure = "arithmetic underflow";
        }
        if (!failure.empty()) {
            result.reverted = true;
            result.revert_reason = std::move(failure);
            result.failed_index = i;
            result.window_start.reset();
            result.window_end.reset();
            live = initial;
            return result;
        }
        if (options.record_window && n >= 2 && i + 2 == n) {
            result.window_end.emplace(live);
        }
    }
    return result;
}

}  // namespace ammx
