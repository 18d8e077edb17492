#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ammx/scan.hpp"

namespace ammx {

inline constexpr std::string_view kEngineVersion = "ammx 0.1.0";

nlohmann::ordered_json config_json(const SearchConfig& config);
/// Inverse of config_json; missing keys keep their defaults.
SearchConfig config_from_json(const nlohmann::json& j);

nlohmann::ordered_json trace_json(const std::vector<TraceEntry>& trace);
/// Calls with every amount fixed to its resolved value.
std::vector<Call> calls_from_trace(const nlohmann::json& trace);

/// Deterministic apart from "generated_at". `settings` is echoed verbatim
/// (scan-level options such as min_usd and the timeout).
nlohmann::ordered_json report_json(const std::vector<ScanResult>& results, const SearchConfig& config,
                                   const nlohmann::ordered_json& settings = nlohmann::ordered_json::object());
void emit_report(const std::vector<ScanResult>& results, const SearchConfig& config,
                 const std::filesystem::path& path,
                 const nlohmann::ordered_json& settings = nlohmann::ordered_json::object());

struct ReplayOutcome {
    std::size_t confirmed = 0;
    std::vector<std::string> mismatches;
    [[nodiscard]] bool ok() const noexcept { return mismatches.empty(); }
};

/// Re-executes the resolved trace of every Profitable entry against the
/// target's initial state and compares the recomputed profit exactly.
ReplayOutcome replay(const nlohmann::json& report, const std::vector<ScanTarget>& targets);
ReplayOutcome replay(const std::filesystem::path& report_path, const std::filesystem::path& corpus_path);

}  // namespace ammx
