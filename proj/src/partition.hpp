#pragma once

#include <cstdint>
#include <vector>

namespace autorank::detail {

/// Coarsest partition of states 0..n-1 that refines `labels` and is stable
/// under every letter (Hopcroft's algorithm). `delta` is row-major
/// [state * letters + letter]. Returns a block id per state.
std::vector<std::uint32_t> refine_partition(
    std::uint32_t n, std::uint32_t letters,
    const std::vector<std::uint32_t>& delta,
    const std::vector<std::uint32_t>& labels);

}  // namespace autorank::detail
