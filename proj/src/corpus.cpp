#include "ammx/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ammx/json_util.hpp"
#include "ammx/ledger.hpp"

namespace ammx {

using nlohmann::json;
using namespace json_util;

namespace {

std::uint32_t fee_part(const json& obj, const char* key, std::uint32_t fallback, const std::string& path) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const Amount v = amount_at(obj, key, path);
    if (v == 0 || v > std::numeric_limits<std::uint32_t>::max()) {
        throw SpecError(path + "." + key, "out of range");
    }
    return v.convert_to<std::uint32_t>();
}

PoolState parse_pool(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        throw SpecError(path, "expected an object");
    }
    reject_unknown(obj, {"id", "token_x", "token_y", "reserve_x", "reserve_y", "fee_num", "fee_den"}, path);
    PoolState p;
    p.id = PoolId(string_at(obj, "id", path));
    p.token_x = TokenId(string_at(obj, "token_x", path));
    p.token_y = TokenId(string_at(obj, "token_y", path));
    p.reserve_x = amount_at(obj, "reserve_x", path);
    p.reserve_y = amount_at(obj, "reserve_y", path);
    p.fee_num = fee_part(obj, "fee_num", 997, path);
    p.fee_den = fee_part(obj, "fee_den", 1000, path);
    if (p.id.empty()) {
        throw SpecError(path + ".id", "empty id");
    }
    if (p.fee_num > p.fee_den) {
        throw SpecError(path + ".fee_num", "fee_num exceeds fee_den");
    }
    if (p.token_x == p.token_y) {
        throw SpecError(path + ".token_y", "pool trades a token against itself");
    }
    if (p.reserve_x == 0 || p.reserve_y == 0) {
        throw SpecError(path, "reserves must be positive");
    }
    p.account = AccountId(p.id.str());
    return p;
}

Rational parse_price(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        throw SpecError(path, "expected {\"num\", \"den\"}");
    }
    reject_unknown(obj, {"num", "den"}, path);
    const Amount num = amount_at(obj, "num", path);
    const Amount den = amount_at(obj, "den", path);
    if (num == 0) {
        throw SpecError(path + ".num", "price must be positive");
    }
    if (den == 0) {
        throw SpecError(path + ".den", "zero denominator");
    }
    return Rational(mp::cpp_int(num), mp::cpp_int(den));
}

const json& array_or_empty(const json& doc, const char* key) {
    static const json empty = json::array();
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return empty;
    }
    if (!it->is_array()) {
        throw SpecError(std::string("$.") + key, "expected an array");
    }
    return *it;
}

// Cross-references and supply bookkeeping.
void check(const Corpus& c) {
    std::map<TokenId, std::size_t> token_index;
    for (std::size_t i = 0; i < c.tokens.size(); ++i) {
        if (!token_index.emplace(c.tokens[i].id, i).second) {
            throw SpecError("$.tokens[" + std::to_string(i) + "].id", "duplicate id '" + c.tokens[i].id.str() + "'");
        }
    }
    std::set<std::string> accounts{c.attacker.str()};
    std::map<TokenId, Amount> seeded;
    for (const auto& t : c.tokens) {
        for (const auto& [account, amount] : t.holders) {
            seeded[t.id] += amount;
        }
    }
    std::set<PoolId> pool_ids;
    for (std::size_t i = 0; i < c.pools.size(); ++i) {
        const PoolState& p = c.pools[i];
        const std::string path = "$.pools[" + std::to_string(i) + "]";
        if (!pool_ids.insert(p.id).second) {
            throw SpecError(path + ".id", "duplicate id '" + p.id.str() + "'");
        }
        if (p.id.str() == c.attacker.str()) {
            throw SpecError(path + ".id", "pool id collides with the attacker");
        }
        for (const auto& [field, token] : {std::pair{".token_x", &p.token_x}, std::pair{".token_y", &p.token_y}}) {
            if (!token_index.contains(*token)) {
                throw SpecError(path + field, "unknown token '" + token->str() + "'");
            }
        }
        seeded[p.token_x] += p.reserve_x;
        seeded[p.token_y] += p.reserve_y;
    }
    for (const auto& [token, amount] : c.endowments) {
        if (!token_index.contains(token)) {
            throw SpecError("$.attacker.endowments." + token.str(), "unknown token");
        }
        seeded[token] += amount;
    }
    for (const auto& [token, _] : c.prices.entries()) {
        if (!token_index.contains(token)) {
            throw SpecError("$.prices." + token.str(), "unknown token");
        }
    }
    for (std::size_t i = 0; i < c.tokens.size(); ++i) {
        const TokenSpec& t = c.tokens[i];
        if (seeded[t.id] != t.total_supply) {
            throw SpecError("$.tokens[" + std::to_string(i) + "].total_supply",
                            "total_supply " + to_string(t.total_supply) + " differs from seeded balances " +
                                to_string(seeded[t.id]));
        }
    }
}

}  // namespace

Corpus parse_corpus(const json& doc) {
    if (!doc.is_object()) {
        throw SpecError("$", "expected an object");
    }
    reject_unknown(doc, {"attacker", "tokens", "pools", "prices"}, "$");
    Corpus c;
    if (doc.contains("attacker")) {
        const json& a = doc["attacker"];
        if (!a.is_object()) {
            throw SpecError("$.attacker", "expected an object");
        }
        reject_unknown(a, {"id", "endowments"}, "$.attacker");
        c.attacker = AccountId(string_at(a, "id", "$.attacker"));
        if (c.attacker.empty()) {
            throw SpecError("$.attacker.id", "empty id");
        }
        if (a.contains("endowments")) {
            const json& e = a["endowments"];
            if (!e.is_object()) {
                throw SpecError("$.attacker.endowments", "expected an object");
            }
            for (const auto& [token, amount] : e.items()) {
                c.endowments[TokenId(token)] = amount_field(amount, "$.attacker.endowments." + token);
            }
        }
    }
    const json& tokens = array_or_empty(doc, "tokens");
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        c.tokens.push_back(parse_token_spec(tokens[i], "$.tokens[" + std::to_string(i) + "]"));
    }
    const json& pools = array_or_empty(doc, "pools");
    for (std::size_t i = 0; i < pools.size(); ++i) {
        c.pools.push_back(parse_pool(pools[i], "$.pools[" + std::to_string(i) + "]"));
    }
    if (doc.contains("prices")) {
        const json& prices = doc["prices"];
        if (!prices.is_object()) {
            throw SpecError("$.prices", "expected an object");
        }
        for (const auto& [token, price] : prices.items()) {
            c.prices.set(TokenId(token), parse_price(price, "$.prices." + token));
        }
    }
    check(c);
    return c;
}

Corpus parse_corpus(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("$", std::string("malformed document: ") + e.what());
    }
    return parse_corpus(doc);
}

Corpus read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open corpus '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_corpus(std::string_view(text.str()));
}

nlohmann::ordered_json to_json(const Corpus& c) {
    nlohmann::ordered_json j;
    j["attacker"]["id"] = c.attacker.str();
    j["attacker"]["endowments"] = nlohmann::ordered_json::object();
    for (const auto& [token, amount] : c.endowments) {
        j["attacker"]["endowments"][token.str()] = to_string(amount);
    }
    j["tokens"] = nlohmann::ordered_json::array();
    for (const auto& t : c.tokens) {
        j["tokens"].push_back(to_json(t));
    }
    j["pools"] = nlohmann::ordered_json::array();
    for (const auto& p : c.pools) {
        j["pools"].push_back({{"id", p.id.str()},
                              {"token_x", p.token_x.str()},
                              {"token_y", p.token_y.str()},
                              {"reserve_x", to_string(p.reserve_x)},
                              {"reserve_y", to_string(p.reserve_y)},
                              {"fee_num", std::to_string(p.fee_num)},
                              {"fee_den", std::to_string(p.fee_den)}});
    }
    j["prices"] = nlohmann::ordered_json::object();
    for (const auto& [token, price] : c.prices.entries()) {
        j["prices"][token.str()] = {{"num", numerator(price).str()}, {"den", denominator(price).str()}};
    }
    return j;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << to_json(corpus).dump(2) << '\n';
}

WorldState build_world(const Corpus& c) {
    WorldState world;
    try {
        for (const auto& t : c.tokens) {
            world.add_token(t);
        }
        for (const auto& p : c.pools) {
            world.add_pool(p);
        }
        for (const auto& [token, amount] : c.endowments) {
            world.seed(token, c.attacker, amount);
        }
    } catch (const std::invalid_argument& e) {
        throw SpecError("$", e.what());
    }
    return world;
}

std::vector<ScanTarget> make_targets(const Corpus& c) {
    const WorldState world = build_world(c);
    std::vector<ScanTarget> out;
    for (const auto& p : c.pools) {
        if (balance_of(world, p.token_y, c.attacker) != 0) {
            throw SpecError("$.attacker.endowments." + p.token_y.str(),
                            "attacker must start without the traded token of pool '" + p.id.str() + "'");
        }
        ScanTarget t{p.id.str(), world, p.id, p.token_y, c.attacker, c.prices};
        t.world.retain({p.token_x, p.token_y});
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const ScanTarget& a, const ScanTarget& b) { return a.id < b.id; });
    return out;
}

std::vector<ScanTarget> load_corpus(const std::filesystem::path& path) { return make_targets(read_corpus(path)); }

std::vector<ScanTarget> filter_targets(std::vector<ScanTarget> targets, const Rational& min_usd) {
    std::erase_if(targets, [&](const ScanTarget& t) {
        const PoolState& p = t.world.pool(t.pool);
        const auto usd = t.prices.usd_value(t.world, p.token_x, p.reserve_x);
        return !usd || *usd <= min_usd;
    });
    return targets;
}

}  // namespace ammx
