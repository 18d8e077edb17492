#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ammx/exec.hpp"
#include "ammx/oracle.hpp"

namespace ammx {

/// One pool/token pair to scan, with its own private world.
struct ScanTarget {
    std::string id;
    WorldState world;
    PoolId pool;
    TokenId token_y;
    AccountId attacker;
    PriceTable prices;

    [[nodiscard]] const TokenId& token_x() const { return world.pool(pool).token_x; }
    [[nodiscard]] ExecContext context() const { return ExecContext{attacker, pool}; }
};

enum class TemplateKind {
    self_transfer,        // [transfer(this, amt)]
    dex_skim_self,        // [transfer(DEX, amt), DEX.skim(this)]
    dex_skim_dex_to_self, // transfer(DEX, amt), [DEX.skim(DEX)], DEX.skim(this)
    dex_skim_dex,         // transfer(DEX, amt), [DEX.skim(DEX)]
    burn_self,            // [burn(amt)], DEX.sync()
    burn_dex,             // [burn(DEX, amt)], DEX.sync()
};

std::string_view template_kind_name(TemplateKind kind);

struct Segment {
    std::vector<Call> calls;
    bool repeatable = false;
};

enum class InsertPosition { end_of_repeating_segment, before_last_swap };

struct StateChange {
    Call call;
    InsertPosition position = InsertPosition::end_of_repeating_segment;
    std::string label;
};

/// A body for c2..c(n-1), with its argument slot already bound. The prelude
/// (buy token_y) and postlude (sell all token_y) are added by materialize().
struct Template {
    std::string id;
    TemplateKind kind = TemplateKind::self_transfer;
    std::string arg_label;
    std::vector<Segment> body;
    std::optional<StateChange> state_change;
};

struct TestCase {
    Template tmpl;
    unsigned repetitions = 1;
    Amount budget;             // token_x spent by the opening swap
    std::string budget_label;  // fraction of reserve_x, e.g. "1/10"
};

struct SearchConfig {
    unsigned rep_cap = 256;
    unsigned limited_rep_cap = 8;
    unsigned stagnation_limit = 3;
    std::vector<std::pair<unsigned, unsigned>> budget_fractions{{1, 100}, {1, 10}, {1, 1}, {2, 1}};
    bool no_repeat = false;
    bool no_invariant_gate = false;
    bool no_dex_fee = false;
    Rational profit_threshold_usd = 1;
    std::uint64_t seed = 0;
    unsigned random_rep_draws = 4;  // per test case, only with no_invariant_gate

    /// 1, 2, 4, ... up to rep_cap (rep_cap itself appended if not a power of two).
    [[nodiscard]] std::vector<unsigned> rep_schedule() const;
    void validate() const;
};

/// Base templates for the target's token: four cross-trading bodies crossed
/// with three transfer amounts, plus two burn bodies crossed with two burn
/// amounts when the token has a burn function.
std::vector<Template> enumerate_templates(const WorldState& world, const ExecContext& ctx);

/// Two variants per state-changing call (small transfers and each declared
/// hook): appended to the repeating segment, and inserted before the last swap.
std::vector<Template> expand_with_state_changing(const Template& base, const WorldState& world,
                                                 const ExecContext& ctx);

/// Full call list: opening swap, body with repeatable segments repeated, the
/// state-changing call if any, closing swap.
std::vector<Call> materialize(const TestCase& tc, const WorldState& world, const ExecContext& ctx);

/// Budgets for the opening swap, smallest first.
std::vector<std::pair<Amount, std::string>> budgets(const WorldState& world, const PoolId& pool,
                                                    const SearchConfig& config);

struct ExploitReport {
    TestCase test_case;
    std::string phase;  // "shallow", "deep", "random" or "oracle"
    bool invariant1_broken = false;
    bool invariant2_broken = false;
    Verdict verdict;
    std::vector<TraceEntry> trace;
};

struct Candidate {
    TestCase test_case;
    bool invariant1_broken = false;
    bool invariant2_broken = false;
    Amount final_x;  // attacker token_x after the r = 1 run
};

struct ShallowOutcome {
    enum class Kind { profitable, candidates, clean } kind = Kind::clean;
    std::optional<ExploitReport> report;
    std::vector<Candidate> candidates;
    std::size_t executions = 0;
};

/// Optional wall-clock limit checked between executions.
struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> at;
    [[nodiscard]] bool expired() const { return at && std::chrono::steady_clock::now() > *at; }
};

/// Thrown by the search when its Deadline passes.
class ScanTimeout : public std::runtime_error {
  public:
    ScanTimeout() : std::runtime_error("scan timed out") {}
};

ShallowOutcome shallow_search(const ScanTarget& target, const SearchConfig& config, const Deadline& deadline = {});

struct DeepOutcome {
    std::optional<ExploitReport> report;
    std::size_t executions = 0;
};

DeepOutcome deep_search(const ScanTarget& target, const std::vector<Candidate>& candidates,
                        const SearchConfig& config, const Deadline& deadline = {});

enum class ScanStatus { profitable, not_vulnerable, timeout, error };
std::string_view status_name(ScanStatus s);

struct ScanVerdict {
    ScanStatus status = ScanStatus::not_vulnerable;
    std::optional<ExploitReport> report;
    bool early_terminated = false;
    bool deep_ran = false;
    std::size_t shallow_candidates = 0;
    std::size_t executions = 0;
    std::string error;
};

/// Shallow search, then deep search on invariant-breaking candidates.
ScanVerdict run_pipeline(const ScanTarget& target, const SearchConfig& config, const Deadline& deadline = {});

/// Reference search: every test case at every r in [1, bound], r ascending,
/// so a Profitable result carries the minimal repetition count.
ScanVerdict brute_force_oracle(const ScanTarget& target, unsigned bound, const SearchConfig& config = {});

/// The target with its pool's fee removed (no_dex_fee ablation).
ScanTarget without_dex_fee(ScanTarget target);

/// Runs one test case and classifies it.
struct CaseRun {
    TxResult tx;
    Verdict verdict;
    Amount final_x;
};
CaseRun run_case(const ScanTarget& target, const TestCase& tc, const SearchConfig& config, bool record_trace);

}  // namespace ammx
