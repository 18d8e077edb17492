#include <gtest/gtest.h>

#include "ammx/token_spec.hpp"

namespace ammx {
namespace {

std::string error_of(std::string_view doc) {
    try {
        parse_token_spec(doc);
    } catch (const SpecError& e) {
        return e.what();
    }
    return "";
}

TEST(TokenSpecParse, MinimalStandardToken) {
    const TokenSpec t = parse_token_spec(R"({"id": "T", "total_supply": "1000"})");
    EXPECT_EQ(t.id.str(), "T");
    EXPECT_EQ(t.decimals, 18u);
    EXPECT_EQ(t.total_supply, 1000);
    EXPECT_TRUE(t.behavior.standard());
    EXPECT_FALSE(t.has_burn());

    const TokenSpec explicit_standard =
        parse_token_spec(R"({"id": "T", "total_supply": 1000, "behavior": {"kind": "standard"}})");
    EXPECT_EQ(explicit_standard, t);
}

TEST(TokenSpecParse, RateAboveTenThousandBpsIsRejectedWithPath) {
    const std::string err = error_of(
        R"({"id": "T", "total_supply": "1", "behavior": {"kind": "fee_on_transfer", "rate_bps": "10001"}})");
    EXPECT_NE(err.find("rate_bps out of range"), std::string::npos) << err;
    EXPECT_NE(err.find("$.behavior.rate_bps"), std::string::npos) << err;
    EXPECT_NO_THROW(parse_token_spec(
        R"({"id": "T", "total_supply": "1", "behavior": {"kind": "fee_on_transfer", "rate_bps": "10000"}})"));
}

TEST(TokenSpecParse, AnchRewardConstants) {
    const TokenSpec t = parse_token_spec(R"({
        "id": "ANCH", "total_supply": "5000000000000000000000000",
        "behavior": {"kind": "reward_on_dex_trade", "reward_num": "5", "reward_den": "10000",
                     "min_amount": "10000000000000000000000"}})");
    const auto* r = t.behavior.find<RewardOnDexTrade>();
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->num, 5);
    EXPECT_EQ(r->den, 10000);
    EXPECT_EQ(r->min_amount, Amount(10000) * pow10(18));
}

TEST(TokenSpecParse, ReportsSchemaErrors) {
    EXPECT_NE(error_of("{"), "");
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1", "behavior": {"kind": "teleport"}})").find("$.behavior"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"total_supply": "1"})").find("$.id"), std::string::npos);
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "-5"})").find("$.total_supply"), std::string::npos);
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1", "colour": "red"})").find("unknown field"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1",
        "behavior": {"kind": "reward_on_dex_trade", "reward_num": "1", "reward_den": "0", "min_amount": "0"}})"),
              "");
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1",
        "behavior": {"kind": "sell_side_deflation", "burn_num": "10", "burn_den": "10"}})"),
              "");
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1", "behavior": {"kind": "fee_on_transfer",
        "rate_bps": "1", "mode": "sideways"}})"),
              "");
}

TEST(TokenSpecParse, AtMostOneFeeLikeBehavior) {
    const std::string err = error_of(R"({"id": "T", "total_supply": "1", "behavior": [
        {"kind": "fee_on_transfer", "rate_bps": "100"},
        {"kind": "sell_side_deflation", "burn_num": "1", "burn_den": "10"}]})");
    EXPECT_NE(err.find("at most one"), std::string::npos) << err;
    // reward and burn compose with a fee
    EXPECT_NO_THROW(parse_token_spec(R"({"id": "T", "total_supply": "1", "behavior": [
        {"kind": "fee_on_transfer", "rate_bps": "100"}, {"kind": "public_burn", "anyone_can_burn_from": false}]})"));
}

TEST(TokenSpecParse, ShareRebaseAndHooks) {
    const TokenSpec t = parse_token_spec(R"({"id": "R", "total_supply": "200",
        "behavior": {"kind": "share_rebase", "initial_token_supply": "200", "initial_share_supply": "100",
                     "maintain_reward": "5", "min_caller_share": "1", "scale_num": "9", "scale_den": "10"},
        "hooks": [{"name": "maintainToken", "effect": {"kind": "rebase_maintain"}}]})");
    ASSERT_NE(t.behavior.find<ShareRebase>(), nullptr);
    ASSERT_NE(t.hook("maintainToken"), nullptr);
    EXPECT_EQ(t.hook("other"), nullptr);

    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1",
        "hooks": [{"name": "m", "effect": {"kind": "rebase_maintain"}}]})").find("share_rebase"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"id": "T", "total_supply": "1", "hooks": [
        {"name": "m", "effect": {"kind": "noop"}}, {"name": "m", "effect": {"kind": "noop"}}]})").find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"id": "R", "total_supply": "300",
        "behavior": {"kind": "share_rebase", "initial_token_supply": "200", "initial_share_supply": "100",
                     "maintain_reward": "5", "min_caller_share": "1", "scale_num": "9", "scale_den": "10"}})"),
              "");
}

TEST(TokenSpecParse, JsonRoundTrip) {
    const TokenSpec t = parse_token_spec(R"({"id": "F", "decimals": 9, "total_supply": "1000",
        "behavior": [{"kind": "fee_on_transfer", "rate_bps": "250", "mode": "exclusive", "sink": "vault"},
                     {"kind": "public_burn", "anyone_can_burn_from": true}],
        "hooks": [{"name": "gift", "effect": {"kind": "mint_to_caller", "amount": "7"}}],
        "holders": {"alice": "600"},
        "label": {"vulnerable": true, "invariant": 1, "archetype": "x"}})");
    EXPECT_EQ(parse_token_spec(to_json(t).dump()), t);
    const auto* fee = t.behavior.find<FeeOnTransfer>();
    ASSERT_NE(fee, nullptr);
    EXPECT_EQ(fee->mode, FeeMode::exclusive);
    EXPECT_EQ(fee->sink, AccountId("vault"));
}

}  // namespace
}  // namespace ammx
