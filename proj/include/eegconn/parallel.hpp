#pragma once

#include <cstddef>
#include <functional>

namespace eegconn {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// default (hardware concurrency). Set once at startup by the CLI.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across
/// up to max_threads() workers. Results must be written by index so the
/// outcome does not depend on the thread count. If any invocation throws,
/// the exception thrown at the smallest index is rethrown after all workers
/// have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace eegconn
