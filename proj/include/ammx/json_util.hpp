#pragma once

#include <initializer_list>
#include <set>
#include <string>

#include <json.hpp>

#include "ammx/amount.hpp"
#include "ammx/token_spec.hpp"

// Field readers shared by the token and corpus parsers. Errors carry a
// JSON path ("$.tokens[2].decimals").
namespace ammx::json_util {

using nlohmann::json;

inline const json& require(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw SpecError(path + "." + key, "missing field");
    }
    return *it;
}

inline Amount amount_field(const json& value, const std::string& path) {
    try {
        if (value.is_string()) {
            return parse_amount(value.get<std::string>());
        }
        if (value.is_number_unsigned()) {
            return Amount(value.get<std::uint64_t>());
        }
    } catch (const std::exception& e) {
        throw SpecError(path, e.what());
    }
    throw SpecError(path, "expected a decimal string");
}

inline Amount amount_at(const json& obj, const char* key, const std::string& path) {
    return amount_field(require(obj, key, path), path + "." + key);
}

inline std::string string_at(const json& obj, const char* key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_string()) {
        throw SpecError(path + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

inline void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& path) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw SpecError(path + "." + key, "unknown field");
        }
    }
}

}  // namespace ammx::json_util
