#pragma once

#include <cstdint>

#include "ammx/corpus.hpp"

namespace ammx {

struct CorpusCounts {
    unsigned anch = 0;
    unsigned shadowfi = 0;
    unsigned deflate = 0;
    unsigned rebase = 0;
    unsigned benign = 0;      // behavior-free
    unsigned benign_fot = 0;  // inclusive fee-on-transfer

    [[nodiscard]] unsigned total() const noexcept { return anch + shadowfi + deflate + rebase + benign + benign_fot; }
};

/// Largest count accepted per archetype.
inline constexpr unsigned kMaxArchetypeCount = 10000;

/// Synthetic corpus: one stablecoin "USD" priced at 1, one pool per token
/// against it, ground-truth labels on every token. Same seed, same corpus.
Corpus generate_corpus(std::uint64_t seed, const CorpusCounts& counts);

}  // namespace ammx
