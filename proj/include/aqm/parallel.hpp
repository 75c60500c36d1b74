#pragma once

#include <cstddef>
#include <functional>

namespace aqm {

/// Upper bound on worker threads for loops that declare determinism.
/// Defaults to the hardware concurrency; 1 forces serial execution.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Runs body(i) for i in [0, count). Iterations must write disjoint
/// outputs; results are then independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace aqm
