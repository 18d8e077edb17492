#include "ammx/pool.hpp"

#include "ammx/ledger.hpp"

namespace ammx {

namespace {

// Runs `body` against `state`, restoring the original value if it throws.
template <class F>
auto atomically(WorldState& state, F&& body) {
    WorldState saved = state;
    try {
        return body();
    } catch (...) {
        state = std::move(saved);
        throw;
    }
}

}  // namespace

Amount get_amount_out(const Amount& amount_in, const Amount& reserve_in, const Amount& reserve_out,
                      std::uint32_t fee_num, std::uint32_t fee_den) {
    if (reserve_in == 0 || reserve_out == 0) {
        throw Revert("insufficient liquidity");
    }
    const Amount in_with_fee = amount_in * fee_num;
    return in_with_fee * reserve_out / (reserve_in * fee_den + in_with_fee);
}

Amount swap_exact_in(WorldState& state, const PoolId& pool_id, const TokenId& input, const Amount& amount_in,
                     const AccountId& payer, const AccountId& to) {
    return atomically(state, [&] {
        const PoolState& before = state.pool(pool_id);
        if (!before.trades(input)) {
            throw Revert("token not traded by pool");
        }
        const AccountId account = before.account;
        const TokenId output = before.other(input);

        transfer(state, input, payer, account, amount_in);

        // Reserves are read after the input transfer: token hooks may move them.
        const PoolState& pool = state.pool(pool_id);
        const Amount reserve_in = pool.reserve_of(input);
        const Amount reserve_out = pool.reserve_of(output);
        const Amount held = balance_of(state, input, account);
        if (held < reserve_in) {
            throw Revert("insufficient input amount");
        }
        const Amount received = held - reserve_in;
        const Amount out = get_amount_out(received, reserve_in, reserve_out, pool.fee_num, pool.fee_den);
        if (out == 0) {
            throw Revert("insufficient output amount");
        }
        transfer(state, output, account, to, out);

        // Pair-level K check on the balances actually held, as a V2 pair does
        // after paying out. Catches tokens that charge the pair extra on send.
        {
            using boost::multiprecision::cpp_int;
            const cpp_int den = pool.fee_den;
            const cpp_int bal_in = balance_of(state, input, account).convert_to<cpp_int>();
            const cpp_int bal_out = balance_of(state, output, account).convert_to<cpp_int>();
            const cpp_int paid = bal_in - reserve_in.convert_to<cpp_int>();
            const cpp_int lhs = (bal_in * den - paid * (den - pool.fee_num)) * bal_out * den;
            const cpp_int rhs = reserve_in.convert_to<cpp_int>() * reserve_out.convert_to<cpp_int>() * den * den;
            if (lhs < rhs) {
                throw Revert("K");
            }
        }

        PoolState& after = state.pool(pool_id);
        after.reserve_x = balance_of(state, after.token_x, account);
        after.reserve_y = balance_of(state, after.token_y, account);
        if (after.reserve_x == 0 || after.reserve_y == 0) {
            throw Revert("reserve depleted");
        }
        return out;
    });
}

std::pair<Amount, Amount> skim(WorldState& state, const PoolId& pool_id, const AccountId& to) {
    return atomically(state, [&] {
        const PoolState pool = state.pool(pool_id);
        auto excess = [&](const TokenId& t, const Amount& reserve) {
            const Amount held = balance_of(state, t, pool.account);
            return held > reserve ? Amount(held - reserve) : Amount(0);
        };
        const Amount dx = excess(pool.token_x, pool.reserve_x);
        transfer(state, pool.token_x, pool.account, to, dx);
        const Amount dy = excess(pool.token_y, pool.reserve_y);
        transfer(state, pool.token_y, pool.account, to, dy);
        return std::pair{dx, dy};
    });
}

void sync(WorldState& state, const PoolId& pool_id) {
    PoolState& pool = state.pool(pool_id);
    const Amount x = balance_of(state, pool.token_x, pool.account);
    const Amount y = balance_of(state, pool.token_y, pool.account);
    if (x == 0 || y == 0) {
        throw Revert("sync to zero reserve");
    }
    pool.reserve_x = x;
    pool.reserve_y = y;
}

}  // namespace ammx
