#include "ammx/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "ammx/corpus.hpp"
#include "ammx/json_util.hpp"

namespace ammx {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace json_util;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string rational_string(const Rational& r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json test_case_json(const TestCase& tc) {
    ordered_json j;
    j["template"] = tc.tmpl.id;
    j["kind"] = std::string(template_kind_name(tc.tmpl.kind));
    j["arg"] = tc.tmpl.arg_label;
    if (tc.tmpl.state_change) {
        j["state_change"] = {
            {"call", tc.tmpl.state_change->label},
            {"position", tc.tmpl.state_change->position == InsertPosition::end_of_repeating_segment
                             ? "end_of_repeating_segment"
                             : "before_last_swap"}};
    } else {
        j["state_change"] = nullptr;
    }
    j["repetitions"] = tc.repetitions;
    j["budget"] = to_string(tc.budget);
    j["budget_fraction"] = tc.budget_label;
    return j;
}

ordered_json result_json(const ScanResult& r) {
    ordered_json j;
    j["target"] = r.target_id;
    j["verdict"] = std::string(status_name(r.verdict.status));
    j["early_terminated"] = r.verdict.early_terminated;
    j["deep_search_ran"] = r.verdict.deep_ran;
    j["shallow_candidates"] = r.verdict.shallow_candidates;
    j["executions"] = r.verdict.executions;
    if (!r.verdict.error.empty()) {
        j["error"] = r.verdict.error;
    }
    if (const auto& rep = r.verdict.report) {
        ordered_json broken = ordered_json::array();
        if (rep->invariant1_broken) broken.push_back(1);
        if (rep->invariant2_broken) broken.push_back(2);
        j["invariants_broken"] = broken;
        j["phase"] = rep->phase;
        j["test_case"] = test_case_json(rep->test_case);
        j["repetitions"] = rep->test_case.repetitions;
        j["budget"] = to_string(rep->test_case.budget);
        const Verdict& v = rep->verdict;
        j["profit"] = {{"token", v.profit_token ? v.profit_token->str() : ""},
                       {"amount", to_string(v.profit_amount)},
                       {"usd", rational_string(v.profit_usd)},
                       {"usd_approx", to_decimal_string(v.profit_usd, 6)}};
        j["trace"] = trace_json(rep->trace);
    }
    return j;
}

std::string text_at(const json& obj, const char* key, const std::string& path) { return string_at(obj, key, path); }

}  // namespace

ordered_json config_json(const SearchConfig& c) {
    ordered_json j;
    j["rep_cap"] = c.rep_cap;
    j["limited_rep_cap"] = c.limited_rep_cap;
    j["stagnation_limit"] = c.stagnation_limit;
    j["budget_fractions"] = ordered_json::array();
    for (const auto& [num, den] : c.budget_fractions) {
        j["budget_fractions"].push_back(std::to_string(num) + "/" + std::to_string(den));
    }
    j["no_repeat"] = c.no_repeat;
    j["no_invariant_gate"] = c.no_invariant_gate;
    j["no_dex_fee"] = c.no_dex_fee;
    j["profit_threshold_usd"] = rational_string(c.profit_threshold_usd);
    j["seed"] = std::to_string(c.seed);
    j["random_rep_draws"] = c.random_rep_draws;
    return j;
}

SearchConfig config_from_json(const json& j) {
    SearchConfig c;
    if (!j.is_object()) {
        throw SpecError("$.config", "expected an object");
    }
    try {
        c.rep_cap = j.value("rep_cap", c.rep_cap);
        c.limited_rep_cap = j.value("limited_rep_cap", c.limited_rep_cap);
        c.stagnation_limit = j.value("stagnation_limit", c.stagnation_limit);
        if (j.contains("budget_fractions")) {
            c.budget_fractions.clear();
            for (const auto& f : j["budget_fractions"]) {
                const Rational r = parse_rational(f.get<std::string>());
                c.budget_fractions.emplace_back(numerator(r).convert_to<unsigned>(),
                                                denominator(r).convert_to<unsigned>());
            }
        }
        c.no_repeat = j.value("no_repeat", false);
        c.no_invariant_gate = j.value("no_invariant_gate", false);
        c.no_dex_fee = j.value("no_dex_fee", false);
        if (j.contains("profit_threshold_usd")) {
            c.profit_threshold_usd = parse_rational(j["profit_threshold_usd"].get<std::string>());
        }
        if (j.contains("seed")) {
            c.seed = std::stoull(j["seed"].get<std::string>());
        }
        c.random_rep_draws = j.value("random_rep_draws", c.random_rep_draws);
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError("$.config", e.what());
    }
    return c;
}

ordered_json trace_json(const std::vector<TraceEntry>& trace) {
    ordered_json out = ordered_json::array();
    for (const TraceEntry& e : trace) {
        ordered_json j;
        j["op"] = std::string(op_name(e.call));
        std::visit(overloaded{
                       [&](const call::Transfer& t) {
                           j["token"] = t.token.str();
                           j["to"] = t.to.str();
                       },
                       [&](const call::Burn& b) {
                           j["token"] = b.token.str();
                           j["from"] = b.from.str();
                       },
                       [&](const call::Skim& s) {
                           j["pool"] = s.pool.str();
                           j["to"] = s.to.str();
                       },
                       [&](const call::Sync& s) { j["pool"] = s.pool.str(); },
                       [&](const call::Swap& s) {
                           j["pool"] = s.pool.str();
                           j["input"] = s.input.str();
                           j["to"] = s.to.str();
                       },
                       [&](const call::Hook& h) {
                           j["token"] = h.token.str();
                           j["name"] = h.name;
                       },
                   },
                   e.call);
        j["call"] = describe(e.call);
        j["args_resolved"] = ordered_json::array();
        for (const Amount& a : e.args_resolved) {
            j["args_resolved"].push_back(to_string(a));
        }
        j["outcome"] = e.outcome;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<Call> calls_from_trace(const json& trace) {
    if (!trace.is_array()) {
        throw SpecError("$.trace", "expected an array");
    }
    std::vector<Call> calls;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const json& e = trace[i];
        const std::string path = "$.trace[" + std::to_string(i) + "]";
        if (!e.is_object()) {
            throw SpecError(path, "expected an object");
        }
        const std::string op = text_at(e, "op", path);
        const auto amount = [&] {
            const json& args = require(e, "args_resolved", path);
            if (!args.is_array() || args.size() != 1) {
                throw SpecError(path + ".args_resolved", "expected one amount");
            }
            return SymbolicArg::constant(amount_field(args[0], path + ".args_resolved[0]"));
        };
        const auto token = [&] { return TokenId(text_at(e, "token", path)); };
        const auto pool = [&] { return PoolId(text_at(e, "pool", path)); };
        const auto account = [&](const char* key) { return AccountId(text_at(e, key, path)); };
        if (op == "transfer") {
            calls.push_back(call::Transfer{token(), account("to"), amount()});
        } else if (op == "burn") {
            calls.push_back(call::Burn{token(), account("from"), amount()});
        } else if (op == "skim") {
            calls.push_back(call::Skim{pool(), account("to")});
        } else if (op == "sync") {
            calls.push_back(call::Sync{pool()});
        } else if (op == "swap") {
            calls.push_back(call::Swap{pool(), TokenId(text_at(e, "input", path)), amount(), account("to")});
        } else if (op == "hook") {
            calls.push_back(call::Hook{token(), text_at(e, "name", path)});
        } else {
            throw SpecError(path + ".op", "unknown op '" + op + "'");
        }
    }
    return calls;
}

ordered_json report_json(const std::vector<ScanResult>& results, const SearchConfig& config,
                         const ordered_json& settings) {
    ordered_json j;
    j["engine_version"] = std::string(kEngineVersion);
    j["generated_at"] = utc_now();
    j["config"] = config_json(config);
    j["settings"] = settings;
    std::map<std::string, std::size_t> counts;
    for (const auto& r : results) {
        ++counts[std::string(status_name(r.verdict.status))];
    }
    j["summary"] = ordered_json::object();
    for (const auto& [name, n] : counts) {
        j["summary"][name] = n;
    }
    j["results"] = ordered_json::array();
    for (const auto& r : results) {
        j["results"].push_back(result_json(r));
    }
    return j;
}

void emit_report(const std::vector<ScanResult>& results, const SearchConfig& config,
                 const std::filesystem::path& path, const ordered_json& settings) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << report_json(results, config, settings).dump(2) << '\n';
}

ReplayOutcome replay(const json& report, const std::vector<ScanTarget>& targets) {
    if (!report.is_object() || !report.contains("results") || !report["results"].is_array()) {
        throw SpecError("$.results", "missing results array");
    }
    const SearchConfig config = report.contains("config") ? config_from_json(report["config"]) : SearchConfig{};
    std::map<std::string, const ScanTarget*> by_id;
    for (const auto& t : targets) {
        by_id.emplace(t.id, &t);
    }
    ReplayOutcome outcome;
    const json& results = report["results"];
    for (std::size_t i = 0; i < results.size(); ++i) {
        const json& r = results[i];
        const std::string path = "$.results[" + std::to_string(i) + "]";
        if (text_at(r, "verdict", path) != status_name(ScanStatus::profitable)) {
            continue;
        }
        const std::string id = text_at(r, "target", path);
        const auto it = by_id.find(id);
        if (it == by_id.end()) {
            outcome.mismatches.push_back(id + ": target not in corpus");
            continue;
        }
        const ScanTarget target = config.no_dex_fee ? without_dex_fee(*it->second) : *it->second;
        const std::vector<Call> calls = calls_from_trace(require(r, "trace", path));
        const TxResult tx = execute_tx(target.world, calls, target.context(), ExecOptions{false, false});
        if (tx.reverted) {
            outcome.mismatches.push_back(id + ": replay reverted at call " + std::to_string(*tx.failed_index) +
                                         " (" + tx.revert_reason + ")");
            continue;
        }
        const Verdict v =
            evaluate_profit(target.world, tx.final_state, target.attacker, target.prices, config.profit_threshold_usd);
        const json& profit = require(r, "profit", path);
        const std::string want_token = text_at(profit, "token", path + ".profit");
        const Amount want_amount = amount_at(profit, "amount", path + ".profit");
        const Rational want_usd = parse_rational(text_at(profit, "usd", path + ".profit"));
        if (!v.profitable || !v.profit_token || v.profit_token->str() != want_token || v.profit_amount != want_amount ||
            v.profit_usd != want_usd) {
            outcome.mismatches.push_back(id + ": recorded profit " + to_string(want_amount) + " " + want_token +
                                         ", replay gives " + to_string(v.profit_amount) + " " +
                                         (v.profit_token ? v.profit_token->str() : "-") +
                                         (v.profitable ? "" : " (not profitable)"));
            continue;
        }
        ++outcome.confirmed;
    }
    return outcome;
}

ReplayOutcome replay(const std::filesystem::path& report_path, const std::filesystem::path& corpus_path) {
    std::ifstream in(report_path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open report '" + report_path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    json doc;
    try {
        doc = json::parse(text.str());
    } catch (const json::parse_error& e) {
        throw SpecError("$", std::string("malformed report: ") + e.what());
    }
    return replay(doc, load_corpus(corpus_path));
}

}  // namespace ammx
