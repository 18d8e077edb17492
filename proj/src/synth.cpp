#include "ammx/synth.hpp"

#include <random>
#include <stdexcept>

#include "ammx/ledger.hpp"

namespace ammx {

std::string_view template_kind_name(TemplateKind kind) {
    switch (kind) {
        case TemplateKind::self_transfer: return "self-transfer";
        case TemplateKind::dex_skim_self: return "dex-skim-self";
        case TemplateKind::dex_skim_dex_to_self: return "dex-skim-dex-then-self";
        case TemplateKind::dex_skim_dex: return "dex-skim-dex";
        case TemplateKind::burn_self: return "burn-self";
        case TemplateKind::burn_dex: return "burn-dex";
    }
    return "?";
}

std::string_view status_name(ScanStatus s) {
    switch (s) {
        case ScanStatus::profitable: return "Profitable";
        case ScanStatus::not_vulnerable: return "NotVulnerable";
        case ScanStatus::timeout: return "Timeout";
        case ScanStatus::error: return "Error";
    }
    return "?";
}

std::vector<unsigned> SearchConfig::rep_schedule() const {
    std::vector<unsigned> out;
    for (unsigned r = 1; r <= rep_cap; r *= 2) {
        out.push_back(r);
        if (r > rep_cap / 2) {
            break;
        }
    }
    if (out.empty() || out.back() != rep_cap) {
        out.push_back(rep_cap);
    }
    return out;
}

void SearchConfig::validate() const {
    if (!(rep_cap >= limited_rep_cap && limited_rep_cap >= 1)) {
        throw std::invalid_argument("need rep_cap >= limited_rep_cap >= 1");
    }
    if (stagnation_limit < 1) {
        throw std::invalid_argument("stagnation_limit must be at least 1");
    }
    if (budget_fractions.empty()) {
        throw std::invalid_argument("no budget fractions");
    }
    for (const auto& [num, den] : budget_fractions) {
        if (num == 0 || den == 0) {
            throw std::invalid_argument("budget fractions must be positive");
        }
    }
    if (profit_threshold_usd < 0) {
        throw std::invalid_argument("profit threshold must not be negative");
    }
}

// ------------------------------------------------------------------ templates

namespace {

bool has_exclusive_fee(const TokenSpec& spec) {
    const auto* fee = spec.behavior.find<FeeOnTransfer>();
    return fee && fee->mode == FeeMode::exclusive;
}

// Amounts the attacker pays are shrunk to leave room for an exclusive fee.
SymbolicArg payable(const TokenSpec& spec, SymbolicArg a) {
    if (has_exclusive_fee(spec)) {
        return SymbolicArg::fee_adjusted(spec.id, std::move(a));
    }
    return a;
}

struct Parties {
    TokenId y;
    AccountId self;
    AccountId pair;
    PoolId pool;
};

Parties parties(const WorldState& world, const ExecContext& ctx) {
    const PoolState& p = world.pool(ctx.pool);
    return Parties{p.token_y, ctx.attacker, p.account, p.id};
}

}  // namespace

std::vector<Template> enumerate_templates(const WorldState& world, const ExecContext& ctx) {
    const Parties p = parties(world, ctx);
    const TokenSpec& spec = *world.token(p.y).spec;
    std::vector<Template> out;

    const std::vector<std::pair<std::string, SymbolicArg>> transfer_args{
        {"balanceOf(this)", SymbolicArg::balance_of_self(p.y)},
        {"balanceOf(pair)", SymbolicArg::balance_of_pair(p.y)},
        {"0", SymbolicArg::constant(0)},
    };
    const auto send = [&](const AccountId& to, const SymbolicArg& amount) {
        return Call{call::Transfer{p.y, to, payable(spec, amount)}};
    };
    const Call skim_self{call::Skim{p.pool, p.self}};
    const Call skim_pair{call::Skim{p.pool, p.pair}};

    for (const TemplateKind kind : {TemplateKind::self_transfer, TemplateKind::dex_skim_self,
                                    TemplateKind::dex_skim_dex_to_self, TemplateKind::dex_skim_dex}) {
        for (const auto& [label, amount] : transfer_args) {
            Template t;
            t.kind = kind;
            t.arg_label = label;
            t.id = std::string(template_kind_name(kind)) + "[" + label + "]";
            switch (kind) {
                case TemplateKind::self_transfer:
                    t.body = {Segment{{send(p.self, amount)}, true}};
                    break;
                case TemplateKind::dex_skim_self:
                    t.body = {Segment{{send(p.pair, amount), skim_self}, true}};
                    break;
                case TemplateKind::dex_skim_dex_to_self:
                    t.body = {Segment{{send(p.pair, amount)}, false}, Segment{{skim_pair}, true},
                              Segment{{skim_self}, false}};
                    break;
                case TemplateKind::dex_skim_dex:
                    t.body = {Segment{{send(p.pair, amount)}, false}, Segment{{skim_pair}, true}};
                    break;
                default:
                    break;
            }
            out.push_back(std::move(t));
        }
    }

    if (spec.has_burn()) {
        const std::vector<std::pair<std::string, SymbolicArg>> burn_args{
            {"balanceOf(pair)-1", SymbolicArg::pair_balance_minus_one(p.y)},
            {"totalSupply()-2*totalSupply()/balanceOf(pair)", SymbolicArg::burn_supply_formula(p.y)},
        };
        const Call sync_pair{call::Sync{p.pool}};
        for (const TemplateKind kind : {TemplateKind::burn_self, TemplateKind::burn_dex}) {
            const AccountId& from = kind == TemplateKind::burn_self ? p.self : p.pair;
            for (const auto& [label, amount] : burn_args) {
                Template t;
                t.kind = kind;
                t.arg_label = label;
                t.id = std::string(template_kind_name(kind)) + "[" + label + "]";
                t.body = {Segment{{Call{call::Burn{p.y, from, amount}}}, true}, Segment{{sync_pair}, false}};
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

std::vector<Template> expand_with_state_changing(const Template& base, const WorldState& world,
                                                 const ExecContext& ctx) {
    const Parties p = parties(world, ctx);
    const TokenSpec& spec = *world.token(p.y).spec;

    std::vector<std::pair<std::string, Call>> changes;
    for (const auto& [who, account] : {std::pair{"this", p.self}, std::pair{"pair", p.pair}}) {
        for (unsigned small : {0u, 1u}) {
            changes.emplace_back("transfer(" + std::string(who) + ", " + std::to_string(small) + ")",
                                 Call{call::Transfer{p.y, account, SymbolicArg::constant(small)}});
        }
    }
    for (const auto& hook : spec.hooks) {
        changes.emplace_back(hook.name + "()", Call{call::Hook{p.y, hook.name}});
    }

    std::vector<Template> out;
    out.reserve(changes.size() * 2);
    for (const auto& [label, c] : changes) {
        for (const InsertPosition pos : {InsertPosition::end_of_repeating_segment, InsertPosition::before_last_swap}) {
            Template t = base;
            t.state_change = StateChange{c, pos, label};
            t.id = base.id + "+" + label +
                   (pos == InsertPosition::end_of_repeating_segment ? "@repeat" : "@before-last-swap");
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<Call> materialize(const TestCase& tc, const WorldState& world, const ExecContext& ctx) {
    const PoolState& pool = world.pool(ctx.pool);
    const TokenSpec& spec = *world.token(pool.token_y).spec;
    const auto& change = tc.tmpl.state_change;

    std::size_t last_repeatable = tc.tmpl.body.size();
    for (std::size_t i = 0; i < tc.tmpl.body.size(); ++i) {
        if (tc.tmpl.body[i].repeatable) {
            last_repeatable = i;
        }
    }

    std::vector<Call> calls;
    calls.push_back(call::Swap{pool.id, pool.token_x, SymbolicArg::constant(tc.budget), ctx.attacker});
    for (std::size_t i = 0; i < tc.tmpl.body.size(); ++i) {
        const Segment& seg = tc.tmpl.body[i];
        const unsigned times = seg.repeatable ? tc.repetitions : 1;
        const bool append_here =
            change && change->position == InsertPosition::end_of_repeating_segment && i == last_repeatable;
        for (unsigned k = 0; k < times; ++k) {
            calls.insert(calls.end(), seg.calls.begin(), seg.calls.end());
            if (append_here) {
                calls.push_back(change->call);
            }
        }
    }
    if (change && (change->position == InsertPosition::before_last_swap || last_repeatable == tc.tmpl.body.size())) {
        calls.push_back(change->call);
    }
    calls.push_back(call::Swap{pool.id, pool.token_y,
                               payable(spec, SymbolicArg::balance_of_self(pool.token_y)), ctx.attacker});
    return calls;
}

std::vector<std::pair<Amount, std::string>> budgets(const WorldState& world, const PoolId& pool,
                                                    const SearchConfig& config) {
    const Amount& reserve = world.pool(pool).reserve_x;
    std::vector<std::pair<Amount, std::string>> out;
    for (const auto& [num, den] : config.budget_fractions) {
        out.emplace_back(reserve * num / den, std::to_string(num) + "/" + std::to_string(den));
    }
    return out;
}

// ------------------------------------------------------------------ execution

CaseRun run_case(const ScanTarget& target, const TestCase& tc, const SearchConfig& config, bool record_trace) {
    const ExecContext ctx = target.context();
    const std::vector<Call> calls = materialize(tc, target.world, ctx);
    CaseRun run{execute_tx(target.world, calls, ctx, ExecOptions{record_trace, true}), {}, {}};
    if (!run.tx.reverted) {
        run.verdict = evaluate_profit(target.world, run.tx.final_state, target.attacker, target.prices,
                                      config.profit_threshold_usd);
        if (run.tx.window_start && run.tx.window_end) {
            run.verdict.invariant1_broken =
                check_invariant1(*run.tx.window_start, *run.tx.window_end, target.pool, target.token_y);
            run.verdict.invariant2_broken =
                check_invariant2(*run.tx.window_start, *run.tx.window_end, target.attacker, target.token_y);
        }
    }
    run.final_x = balance_of(run.tx.final_state, target.token_x(), target.attacker);
    return run;
}

namespace {

// Test cases at r = 1 in exploration order: base templates before
// expansions, smaller budgets before larger.
std::vector<std::vector<TestCase>> phases(const ScanTarget& target, const SearchConfig& config) {
    const ExecContext ctx = target.context();
    const auto base = enumerate_templates(target.world, ctx);
    std::vector<Template> expanded;
    for (const auto& t : base) {
        auto more = expand_with_state_changing(t, target.world, ctx);
        expanded.insert(expanded.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    std::vector<std::vector<TestCase>> out(2);
    for (const auto& [amount, label] : budgets(target.world, target.pool, config)) {
        for (const auto& t : base) {
            out[0].push_back(TestCase{t, 1, amount, label});
        }
        for (const auto& t : expanded) {
            out[1].push_back(TestCase{t, 1, amount, label});
        }
    }
    return out;
}

ExploitReport make_report(const ScanTarget& target, const TestCase& tc, const SearchConfig& config,
                          std::string phase, bool inv1, bool inv2) {
    CaseRun run = run_case(target, tc, config, true);
    ExploitReport report;
    report.test_case = tc;
    report.phase = std::move(phase);
    report.invariant1_broken = inv1;
    report.invariant2_broken = inv2;
    report.verdict = run.verdict;
    report.trace = std::move(run.tx.trace);
    return report;
}

void check(const Deadline& deadline) {
    if (deadline.expired()) {
        throw ScanTimeout();
    }
}

}  // namespace

ShallowOutcome shallow_search(const ScanTarget& target, const SearchConfig& config, const Deadline& deadline) {
    ShallowOutcome outcome;
    for (const auto& phase : phases(target, config)) {
        for (const TestCase& tc : phase) {
            check(deadline);
            const CaseRun run = run_case(target, tc, config, false);
            ++outcome.executions;
            if (run.tx.reverted) {
                continue;
            }
            const Verdict& v = run.verdict;
            if (v.profitable) {
                outcome.kind = ShallowOutcome::Kind::profitable;
                outcome.report = make_report(target, tc, config, "shallow", v.invariant1_broken, v.invariant2_broken);
                return outcome;
            }
            if (v.invariant1_broken || v.invariant2_broken) {
                outcome.candidates.push_back(Candidate{tc, v.invariant1_broken, v.invariant2_broken, run.final_x});
            }
        }
    }
    outcome.kind = outcome.candidates.empty() ? ShallowOutcome::Kind::clean : ShallowOutcome::Kind::candidates;
    return outcome;
}

DeepOutcome deep_search(const ScanTarget& target, const std::vector<Candidate>& candidates,
                        const SearchConfig& config, const Deadline& deadline) {
    struct Track {
        const Candidate* candidate;
        Amount last_final;
        unsigned last_r = 1;
        unsigned stagnant = 0;
        unsigned cap;
        bool alive = true;
    };
    DeepOutcome outcome;
    std::vector<Track> tracks;
    tracks.reserve(candidates.size());
    for (const auto& c : candidates) {
        tracks.push_back(Track{&c, c.final_x, 1, 0, config.rep_cap, true});
    }
    const auto at = [](const Candidate& c, unsigned r) {
        TestCase tc = c.test_case;
        tc.repetitions = r;
        return tc;
    };

    const auto schedule = config.rep_schedule();
    for (std::size_t level = 1; level < schedule.size(); ++level) {
        const unsigned r = schedule[level];
        std::vector<Track*> hits;
        bool any_alive = false;
        for (Track& track : tracks) {
            if (!track.alive) {
                continue;
            }
            if (r > track.cap) {
                track.alive = false;
                continue;
            }
            check(deadline);
            const CaseRun run = run_case(target, at(*track.candidate, r), config, false);
            ++outcome.executions;
            if (run.tx.reverted) {
                track.alive = false;
                continue;
            }
            if (run.verdict.profitable) {
                hits.push_back(&track);
                continue;
            }
            if (run.final_x == track.last_final) {
                if (++track.stagnant >= config.stagnation_limit) {
                    track.alive = false;
                    continue;
                }
            } else {
                track.stagnant = 0;
                if (run.final_x < track.last_final) {
                    track.cap = std::min(track.cap, config.limited_rep_cap);
                }
            }
            track.last_final = run.final_x;
            track.last_r = r;
            any_alive = true;
        }

        if (!hits.empty()) {
            // The level that first turned a profit brackets the minimum in
            // (last_r, r] for each hit; take the smallest across hits.
            const Candidate* best = nullptr;
            unsigned best_r = 0;
            for (Track* track : hits) {
                unsigned found = r;
                for (unsigned rr = track->last_r + 1; rr < r; ++rr) {
                    check(deadline);
                    ++outcome.executions;
                    if (run_case(target, at(*track->candidate, rr), config, false).verdict.profitable) {
                        found = rr;
                        break;
                    }
                }
                if (!best || found < best_r) {
                    best = track->candidate;
                    best_r = found;
                }
            }
            outcome.report = make_report(target, at(*best, best_r), config, "deep", best->invariant1_broken,
                                         best->invariant2_broken);
            return outcome;
        }
        if (!any_alive) {
            break;
        }
    }
    return outcome;
}

ScanTarget without_dex_fee(ScanTarget target) {
    PoolState& pool = target.world.pool(target.pool);
    pool.fee_num = 1;
    pool.fee_den = 1;
    return target;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

ScanVerdict random_repetition_search(const ScanTarget& target, const SearchConfig& config, const Deadline& deadline) {
    ScanVerdict verdict;
    std::mt19937_64 rng(config.seed ^ fnv1a(target.id));
    for (const auto& phase : phases(target, config)) {
        for (TestCase tc : phase) {
            for (unsigned draw = 0; draw < config.random_rep_draws; ++draw) {
                check(deadline);
                tc.repetitions = 1 + static_cast<unsigned>(rng() % config.rep_cap);
                const CaseRun run = run_case(target, tc, config, false);
                ++verdict.executions;
                if (!run.tx.reverted && run.verdict.profitable) {
                    verdict.status = ScanStatus::profitable;
                    verdict.report = make_report(target, tc, config, "random", run.verdict.invariant1_broken,
                                                 run.verdict.invariant2_broken);
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

}  // namespace

ScanVerdict run_pipeline(const ScanTarget& input, const SearchConfig& config, const Deadline& deadline) {
    config.validate();
    const ScanTarget target = config.no_dex_fee ? without_dex_fee(input) : input;
    ScanVerdict verdict;
    try {
        if (config.no_invariant_gate) {
            verdict = random_repetition_search(target, config, deadline);
            verdict.deep_ran = true;
            return verdict;
        }
        ShallowOutcome shallow = shallow_search(target, config, deadline);
        verdict.executions = shallow.executions;
        verdict.shallow_candidates = shallow.candidates.size();
        switch (shallow.kind) {
            case ShallowOutcome::Kind::profitable:
                verdict.status = ScanStatus::profitable;
                verdict.report = std::move(shallow.report);
                return verdict;
            case ShallowOutcome::Kind::clean:
                verdict.early_terminated = true;
                return verdict;
            case ShallowOutcome::Kind::candidates:
                break;
        }
        if (config.no_repeat) {
            return verdict;
        }
        verdict.deep_ran = true;
        DeepOutcome deep = deep_search(target, shallow.candidates, config, deadline);
        verdict.executions += deep.executions;
        if (deep.report) {
            verdict.status = ScanStatus::profitable;
            verdict.report = std::move(deep.report);
        }
        return verdict;
    } catch (const ScanTimeout&) {
        verdict.status = ScanStatus::timeout;
        verdict.report.reset();
        return verdict;
    }
}

ScanVerdict brute_force_oracle(const ScanTarget& input, unsigned bound, const SearchConfig& config) {
    const ScanTarget target = config.no_dex_fee ? without_dex_fee(input) : input;
    ScanVerdict verdict;
    verdict.deep_ran = true;
    const auto all = phases(target, config);
    for (unsigned r = 1; r <= bound; ++r) {
        for (const auto& phase : all) {
            for (TestCase tc : phase) {
                tc.repetitions = r;
                const CaseRun run = run_case(target, tc, config, false);
                ++verdict.executions;
                if (!run.tx.reverted && run.verdict.profitable) {
                    verdict.status = ScanStatus::profitable;
                    verdict.report = make_report(target, tc, config, "oracle", run.verdict.invariant1_broken,
                                                 run.verdict.invariant2_broken);
                    return verdict;
                }
            }
        }
    }
    return verdict;
}

}  // namespace ammx
