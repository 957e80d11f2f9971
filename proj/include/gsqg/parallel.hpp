#pragma once

#include <cstddef>
#include <functional>

namespace gsqg {

/// Worker count used by the parallel loops (>= 1).
int thread_count();
void set_thread_count(int n);

/// Runs body(chunk) for chunk in [0, n_chunks). Chunks are distributed over
/// thread_count() workers; the partition into chunks is chosen by the caller
/// and must not depend on the thread count, so reductions that combine
/// per-chunk partial results in chunk order stay bit-identical.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body);

}  // namespace gsqg
