// ammx: scan AMM pools for token-accounting exploits.
//
//   ammx scan --corpus c.json --report r.json [--workers N] ...
//   ammx gen-corpus --seed S --out c.json --anch N ...
//   ammx replay --report r.json --corpus c.json
//
// Exit codes: 0 done, 1 usage or schema error, 2 replay mismatch.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <thread>

#include "ammx/corpusgen.hpp"
#include "ammx/report.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kMismatch = 2;

struct ScanArgs {
    std::string corpus;
    std::string report;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    double timeout_secs = 1200;
    std::string min_usd = "1000";
    std::string profit_threshold = "1";
    unsigned rep_cap = 256;
    bool no_repeat = false;
    bool no_invariant_gate = false;
    bool no_dex_fee = false;
    std::uint64_t seed = 0;
};

int run_scan(const ScanArgs& a) {
    using namespace ammx;
    SearchConfig config;
    config.rep_cap = a.rep_cap;
    config.limited_rep_cap = std::min(config.limited_rep_cap, a.rep_cap);
    config.no_repeat = a.no_repeat;
    config.no_invariant_gate = a.no_invariant_gate;
    config.no_dex_fee = a.no_dex_fee;
    config.profit_threshold_usd = parse_rational(a.profit_threshold);
    config.seed = a.seed;
    config.validate();
    const Rational min_usd = parse_rational(a.min_usd);

    const auto all = load_corpus(a.corpus);
    const auto targets = filter_targets(all, min_usd);
    std::fprintf(stderr, "%zu targets (%zu filtered out), %u workers\n", targets.size(), all.size() - targets.size(),
                 a.workers);

    ScanOptions options;
    options.workers = a.workers;
    options.timeout = std::chrono::milliseconds(static_cast<long long>(a.timeout_secs * 1000));
    const auto results = scan_all(targets, config, options);

    for (const auto& r : results) {
        std::string detail;
        if (r.verdict.report) {
            const auto& rep = *r.verdict.report;
            detail = rep.test_case.tmpl.id + " r=" + std::to_string(rep.test_case.repetitions) + " +$" +
                     to_decimal_string(rep.verdict.profit_usd, 2);
        } else if (!r.verdict.error.empty()) {
            detail = r.verdict.error;
        }
        std::printf("%-28s %-14s %8.3fs  %s\n", r.target_id.c_str(), std::string(status_name(r.verdict.status)).c_str(),
                    r.seconds, detail.c_str());
    }
    nlohmann::ordered_json settings;
    settings["min_usd"] = a.min_usd;
    settings["timeout_secs"] = a.timeout_secs;
    emit_report(results, config, a.report, settings);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scan constant-product pools for token-accounting exploits"};
    app.require_subcommand(1);

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Scan every pool of a corpus and write a report");
    scan_cmd->add_option("--corpus", scan.corpus, "Corpus file")->required()->check(CLI::ExistingFile);
    scan_cmd->add_option("--report", scan.report, "Report file to write")->required();
    scan_cmd->add_option("--workers", scan.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    scan_cmd->add_option("--timeout-secs", scan.timeout_secs, "Per-target timeout")->check(CLI::PositiveNumber);
    scan_cmd->add_option("--min-usd", scan.min_usd, "Minimum USD value of the priced reserve");
    scan_cmd->add_option("--profit-threshold-usd", scan.profit_threshold, "Minimum USD profit");
    scan_cmd->add_option("--rep-cap", scan.rep_cap, "Largest repetition count")->check(CLI::Range(1u, 1u << 20));
    scan_cmd->add_flag("--no-repeat", scan.no_repeat, "Shallow search only");
    scan_cmd->add_flag("--no-invariant-gate", scan.no_invariant_gate, "Random repetitions without the invariant gate");
    scan_cmd->add_flag("--no-dex-fee", scan.no_dex_fee, "Remove the pool fee");
    scan_cmd->add_option("--seed", scan.seed, "Seed for randomized search");

    std::uint64_t gen_seed = 0;
    std::string gen_out;
    ammx::CorpusCounts counts;
    auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a labeled synthetic corpus");
    gen_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
    gen_cmd->add_option("--out", gen_out, "Corpus file to write")->required();
    const auto count = CLI::Range(0u, ammx::kMaxArchetypeCount);
    gen_cmd->add_option("--anch", counts.anch, "Reward-on-trade tokens")->check(count);
    gen_cmd->add_option("--shadowfi", counts.shadowfi, "Public-burn tokens")->check(count);
    gen_cmd->add_option("--deflate", counts.deflate, "Sell-side deflation tokens")->check(count);
    gen_cmd->add_option("--rebase", counts.rebase, "Share-rebase tokens")->check(count);
    gen_cmd->add_option("--benign", counts.benign, "Behavior-free tokens")->check(count);
    gen_cmd->add_option("--benign-fot", counts.benign_fot, "Inclusive fee-on-transfer tokens")->check(count);

    std::string replay_report;
    std::string replay_corpus;
    auto* replay_cmd = app.add_subcommand("replay", "Re-execute a report's traces and confirm the profits");
    replay_cmd->add_option("--report", replay_report, "Report file")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--corpus", replay_corpus, "Corpus file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsage;
    }

    try {
        if (*scan_cmd) {
            return run_scan(scan);
        }
        if (*gen_cmd) {
            const ammx::Corpus corpus = ammx::generate_corpus(gen_seed, counts);
            ammx::write_corpus(corpus, gen_out);
            std::fprintf(stderr, "wrote %u tokens, %zu pools to %s\n", counts.total() + 1, corpus.pools.size(),
                         gen_out.c_str());
            return 0;
        }
        const ammx::ReplayOutcome outcome = ammx::replay(replay_report, replay_corpus);
        for (const auto& m : outcome.mismatches) {
            std::fprintf(stderr, "mismatch: %s\n", m.c_str());
        }
        std::printf("%zu confirmed, %zu mismatched\n", outcome.confirmed, outcome.mismatches.size());
        return outcome.ok() ? 0 : kMismatch;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
}
