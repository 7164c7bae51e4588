#pragma once

#include <cstddef>
#include <functional>

namespace nbgeo {

/// Worker count: hardware concurrency capped by the NBGEO_THREADS environment
/// variable (minimum 1).
int default_thread_count();

/// Chunked parallel map over [0, n). Each index is processed exactly once;
/// results must be written to preallocated, index-owned slots so runs are
/// deterministic regardless of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

} // namespace nbgeo
