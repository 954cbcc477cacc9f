#pragma once

#include <cstddef>
#include <functional>

namespace wise {

/// Worker count used by parallel loops. Defaults to WISE_THREADS when set,
/// otherwise std::thread::hardware_concurrency().
std::size_t thread_count() noexcept;

/// Overrides the worker count; 0 restores the default.
void set_thread_count(std::size_t threads) noexcept;

/// Runs body(i) for i in [0, count). Each index must write only its own
/// outputs, which keeps results independent of scheduling. Calls made from
/// inside a worker run serially. If bodies throw, the exception from the
/// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace wise
