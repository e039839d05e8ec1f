#pragma once

#include <cstddef>
#include <functional>

namespace adobing {

// Worker cap: min(hardware threads, ADOBING_THREADS when set). Always >= 1.
int worker_count();

// Runs fn(begin, end) over disjoint index chunks of [0, n). Callers assemble
// results by index, so the outcome is independent of scheduling. Runs inline
// when n is small or only one worker is available.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace adobing
