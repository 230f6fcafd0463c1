#pragma once

#include <cstdint>

namespace vlab {

// Below this many independent work items a kernel stays on one thread.
inline constexpr std::int64_t kParallelGrain = 2048;

int max_threads();
void set_threads(int n);
/// Honors VLAB_THREADS when set to a positive integer; returns the cap applied
/// (0 when the variable is absent).
int apply_thread_limit_from_env();

}  // namespace vlab
