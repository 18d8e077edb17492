#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ammx/amount.hpp"

namespace ammx {

enum class FeeMode { inclusive, exclusive };

// Declarative token behaviours. A token carries a list of these; the
// transfer pipeline consults them in a fixed order (see ledger.hpp).

struct FeeOnTransfer {
    std::uint32_t rate_bps = 0;
    FeeMode mode = FeeMode::inclusive;
    std::optional<AccountId> sink;  // nullopt: fee is burned
    friend bool operator==(const FeeOnTransfer&, const FeeOnTransfer&) = default;
};

/// Mints amount * num / den to the non-pool side of a transfer touching a
/// pool account, when amount > min_amount. For pool-to-pool transfers the
/// receiver is rewarded.
struct RewardOnDexTrade {
    Amount num;
    Amount den;
    Amount min_amount;
    friend bool operator==(const RewardOnDexTrade&, const RewardOnDexTrade&) = default;
};

struct PublicBurn {
    bool anyone_can_burn_from = false;
    friend bool operator==(const PublicBurn&, const PublicBurn&) = default;
};

/// On any transfer into a pool account, the pool's balance is first scaled
/// by (den - num) / den and the pool's reserve for the token follows it.
struct SellSideDeflation {
    Amount num;
    Amount den;
    friend bool operator==(const SellSideDeflation&, const SellSideDeflation&) = default;
};

/// Balances are stored as shares valued at total_token / total_share.
struct ShareRebase {
    Amount initial_token_supply;
    Amount initial_share_supply;
    Amount maintain_reward;   // shares credited to the hook caller
    Amount min_caller_share;  // caller must hold strictly more shares
    Amount scale_num;
    Amount scale_den;
    friend bool operator==(const ShareRebase&, const ShareRebase&) = default;
};

using Behavior =
    std::variant<FeeOnTransfer, RewardOnDexTrade, PublicBurn, SellSideDeflation, ShareRebase>;

std::string_view behavior_kind(const Behavior& b);

/// Ordered set of behaviours; empty means a plain ERC20-like token.
struct BehaviorSpec {
    std::vector<Behavior> items;

    [[nodiscard]] bool standard() const noexcept { return items.empty(); }

    template <class T>
    [[nodiscard]] const T* find() const noexcept {
        for (const auto& b : items) {
            if (const auto* p = std::get_if<T>(&b)) {
                return p;
            }
        }
        return nullptr;
    }

    friend bool operator==(const BehaviorSpec&, const BehaviorSpec&) = default;
};

// Hook effects. Hooks take no arguments and are invoked by the caller.
struct RebaseMaintain {
    friend bool operator==(const RebaseMaintain&, const RebaseMaintain&) = default;
};
struct MintToCaller {
    Amount amount;
    friend bool operator==(const MintToCaller&, const MintToCaller&) = default;
};
struct NoopEffect {
    friend bool operator==(const NoopEffect&, const NoopEffect&) = default;
};
using HookEffect = std::variant<RebaseMaintain, MintToCaller, NoopEffect>;

struct HookDef {
    std::string name;
    HookEffect effect;
    friend bool operator==(const HookDef&, const HookDef&) = default;
};

/// Ground-truth annotation carried by generated corpora.
struct TokenLabel {
    bool vulnerable = false;
    int invariant = 0;  // 0 none, 1 or 2
    std::string archetype;
    friend bool operator==(const TokenLabel&, const TokenLabel&) = default;
};

struct TokenSpec {
    TokenId id;
    unsigned decimals = 18;
    Amount total_supply;
    BehaviorSpec behavior;
    std::vector<HookDef> hooks;
    std::map<AccountId, Amount> holders;
    std::optional<TokenLabel> label;

    [[nodiscard]] bool has_burn() const noexcept { return behavior.find<PublicBurn>() != nullptr; }
    [[nodiscard]] const HookDef* hook(std::string_view name) const noexcept;

    friend bool operator==(const TokenSpec&, const TokenSpec&) = default;
};

/// Schema error with the JSON path of the offending field.
class SpecError : public std::runtime_error {
  public:
    SpecError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

/// Parses one token object (see the corpus schema in README.md).
TokenSpec parse_token_spec(std::string_view text);
TokenSpec parse_token_spec(const nlohmann::json& doc, const std::string& path = "$");
inline TokenSpec parse_token_spec(const char* text) { return parse_token_spec(std::string_view(text)); }
inline TokenSpec parse_token_spec(const std::string& text) { return parse_token_spec(std::string_view(text)); }

/// Checks parameter ranges and the one-fee-like-behaviour rule.
void validate(const TokenSpec& spec, const std::string& path = "$");

nlohmann::ordered_json to_json(const TokenSpec& spec);

}  // namespace ammx
