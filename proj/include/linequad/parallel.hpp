#pragma once

#include <cstddef>
#include <functional>

namespace linequad {

/// Worker count: LINEQUAD_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads with
/// dynamic chunking. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace linequad
