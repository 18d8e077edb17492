#include "ammx/scan.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace ammx {

namespace {

ScanResult scan_one(const ScanTarget& target, const SearchConfig& config, std::chrono::milliseconds timeout) {
    const auto start = std::chrono::steady_clock::now();
    ScanResult result{target.id, {}, 0};
    try {
        result.verdict = run_pipeline(target, config, Deadline{start + timeout});
    } catch (const std::exception& e) {
        result.verdict = ScanVerdict{};
        result.verdict.status = ScanStatus::error;
        result.verdict.error = e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace

std::vector<ScanResult> scan_all(const std::vector<ScanTarget>& targets, const SearchConfig& config,
                                 const ScanOptions& options) {
    config.validate();
    std::vector<ScanResult> results(targets.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < targets.size(); i = next++) {
            const ScanTarget local = targets[i];
            results[i] = scan_one(local, config, options.timeout);
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, targets.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    std::stable_sort(results.begin(), results.end(),
                     [](const ScanResult& a, const ScanResult& b) { return a.target_id < b.target_id; });
    return results;
}

}  // namespace ammx
