#pragma once

#include <cstddef>
#include <functional>

namespace nlac {

/// Number of worker threads used by data-parallel loops. 0 selects
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for every i in [begin, end) using a static partition over
/// thread_count() workers. Each index is processed by exactly one worker, so
/// results written per index do not depend on the worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace nlac
