#pragma once

#include <cstddef>
#include <functional>

namespace jchm {

/// Hardware concurrency, overridden by the JCHM_JOBS environment variable.
int default_jobs();

/// Runs task(i) for i in [0, count) on `jobs` worker threads. Tasks must be
/// independent; the first exception thrown by any task is rethrown after all
/// workers have joined.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

}  // namespace jchm
