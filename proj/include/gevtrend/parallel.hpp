#pragma once

#include <cstddef>
#include <functional>

namespace gevtrend {

/// Worker count used by Monte Carlo loops. 0 means hardware concurrency.
void set_thread_count(unsigned threads) noexcept;
[[nodiscard]] unsigned thread_count() noexcept;

/**
 * Run `body(i)` for i in [0, count) on up to thread_count() workers.
 *
 * Bodies must write only to per-index storage; callers reduce afterwards in index
 * order, which keeps every result independent of scheduling. The first exception
 * thrown by any body is rethrown on the calling thread after all workers stop.
 * Calls made from inside a body run serially on that worker.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gevtrend
