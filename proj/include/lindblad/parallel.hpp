#pragma once

#include <cstddef>
#include <functional>

namespace lindblad {

/// Worker cap: LINDBLAD_LAB_THREADS when set (clamped to >= 1), otherwise
/// the available hardware parallelism.
std::size_t worker_count();

/// Runs fn(0..n-1) across workers. Results must be written to per-index
/// slots; the partitioning is deterministic. Exceptions from workers are
/// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace lindblad
