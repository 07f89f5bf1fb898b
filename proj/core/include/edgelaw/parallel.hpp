#pragma once

#include <cstddef>
#include <functional>

namespace edgelaw {

// Worker cap used by parallel_for. 0 means hardware concurrency.
void set_max_threads(int n);
int max_threads();

// Runs body(i) for i in [0, count) on up to max_threads() workers. Callers
// store results per index, so output does not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace edgelaw
