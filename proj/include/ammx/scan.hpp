#pragma once

#include <chrono>
#include <vector>

#include "ammx/synth.hpp"

namespace ammx {

struct ScanResult {
    std::string target_id;
    ScanVerdict verdict;
    double seconds = 0;
};

struct ScanOptions {
    unsigned workers = 1;
    std::chrono::milliseconds timeout = std::chrono::seconds(1200);
};

/// Runs run_pipeline on every target using `options.workers` threads. Each
/// worker scans its own copy of a target; results come back sorted by target
/// id. A target that throws is reported as Error, one that overruns its
/// timeout as Timeout.
std::vector<ScanResult> scan_all(const std::vector<ScanTarget>& targets, const SearchConfig& config,
                                 const ScanOptions& options = {});

}  // namespace ammx
