#pragma once

#include <cstddef>
#include <functional>

namespace toto {

/// Worker count from TOTO_THREADS; unset, 0 or unparsable means one per
/// hardware thread.
unsigned thread_count();

/// Calls fn(i) for i in [0, count) on up to thread_count() threads. fn must
/// only write to per-index state. The first exception thrown is rethrown
/// after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace toto
