#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace heterour {

/// Thread cap: HETEROUR_THREADS env var when set, otherwise hardware concurrency.
[[nodiscard]] unsigned max_threads();

/**
 * @brief Run fn(i) for i in [0, n) on up to n_threads workers.
 *
 * Work is claimed through an atomic counter, so any schedule visits each
 * index exactly once; callers must make fn(i) depend only on i for
 * schedule-independent results. n_threads == 0 means use max_threads().
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned n_threads = 0);

}  // namespace heterour
