#pragma once

#include <cstddef>
#include <functional>

namespace subclust {

/// Worker count: hardware concurrency, capped by the THREADS environment
/// variable when it holds a positive integer.
std::size_t worker_count() noexcept;

/// Runs body(0) … body(count − 1), spread over worker_count() threads.
/// Each index runs exactly once. If any invocation throws, the exception from
/// the lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace subclust
