#pragma once

#include <cstddef>
#include <functional>

namespace chlab {

/// Worker count used by parallel_for. Resolution order: set_thread_count(),
/// the CHLAB_THREADS environment variable, hardware concurrency. Results are
/// independent of the setting: workers write disjoint slots and all
/// reductions run serially in site order.
int thread_count();
void set_thread_count(int n);

/// Runs fn(begin, end) over disjoint chunks of [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace chlab
