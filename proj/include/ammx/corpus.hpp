#pragma once

#include <filesystem>
#include <map>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ammx/synth.hpp"

namespace ammx {

/// Everything needed to reproduce a scan: tokens, pools, prices and the
/// attacker's starting balances.
struct Corpus {
    AccountId attacker{"attacker"};
    std::map<TokenId, Amount> endowments;
    std::vector<TokenSpec> tokens;
    std::vector<PoolState> pools;
    PriceTable prices;
};

/// Schema violations throw SpecError with a JSON path.
Corpus parse_corpus(const nlohmann::json& doc);
Corpus parse_corpus(std::string_view text);
inline Corpus parse_corpus(const char* text) { return parse_corpus(std::string_view(text)); }
inline Corpus parse_corpus(const std::string& text) { return parse_corpus(std::string_view(text)); }
Corpus read_corpus(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// One world holding every token, pool and endowment of the corpus.
WorldState build_world(const Corpus& corpus);

/// One target per pool, sorted by id. Each target's world keeps only the
/// pool's two tokens and the pools trading nothing else.
std::vector<ScanTarget> make_targets(const Corpus& corpus);

std::vector<ScanTarget> load_corpus(const std::filesystem::path& path);

/// Keeps targets whose token_x is priced and whose token_x reserve is worth
/// more than min_usd.
std::vector<ScanTarget> filter_targets(std::vector<ScanTarget> targets, const Rational& min_usd);

}  // namespace ammx
