#pragma once

#include <utility>

#include "ammx/world.hpp"

namespace ammx {

/// floor(in * fee_num * reserve_out / (reserve_in * fee_den + in * fee_num)).
/// Throws Revert when either reserve is zero.
Amount get_amount_out(const Amount& amount_in, const Amount& reserve_in, const Amount& reserve_out,
                      std::uint32_t fee_num = 997, std::uint32_t fee_den = 1000);

/// Moves `amount_in` of `input` from `payer` into the pool, prices the swap on
/// what the pool actually holds above its reserve (so earlier leftovers count
/// as input), pays the output to `to`, and syncs reserves to the pool's
/// balances. Returns the output amount sent. Atomic: throws Revert with the
/// state untouched.
Amount swap_exact_in(WorldState& state, const PoolId& pool, const TokenId& input, const Amount& amount_in,
                     const AccountId& payer, const AccountId& to);

/// Sends each token's balance above its reserve to `to`. A balance below the
/// reserve skims zero. Reserves are left unchanged. Returns (x, y) skimmed.
std::pair<Amount, Amount> skim(WorldState& state, const PoolId& pool, const AccountId& to);

/// Adopts the pool's ledger balances as its reserves. Reverts on a zero reserve.
void sync(WorldState& state, const PoolId& pool);

}  // namespace ammx
