#pragma once

// Deterministic data parallelism: work is split into chunks whose boundaries
// depend only on the item count, never on the thread count, and chunk results
// are combined in index order.  Outputs are therefore bit-stable regardless of
// WILLMORE_LAB_THREADS.

#include <cstddef>
#include <functional>

namespace willmore {

// Thread cap from WILLMORE_LAB_THREADS (default: hardware concurrency, max 16).
int thread_count();

// Calls fn(chunk_index, begin, end) for a fixed partition of [0, n) into
// chunks; chunks may run concurrently.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace willmore
