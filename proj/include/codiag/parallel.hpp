#pragma once

#include <cstddef>
#include <functional>

namespace codiag {

/// Global worker count (defaults to hardware concurrency). Changing it must
/// never change numerical results, only wall time.
int worker_count();
void set_worker_count(int n);

/// Runs f(i) for i in [0, n). Each invocation may write only to per-index
/// slots, so the result is independent of the chunking.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

} // namespace codiag
