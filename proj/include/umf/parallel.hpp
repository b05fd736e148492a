#pragma once

#include <cstddef>
#include <functional>

namespace umf {

/// Worker count: UMF_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index must write only its own
/// output slot, so the result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace umf
