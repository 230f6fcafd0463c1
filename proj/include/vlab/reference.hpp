#pragma once

// Single-threaded reference versions of the hot kernels. They follow the
// definitions literally and exist so tests and the benchmark can hold the
// OpenMP paths against them.

#include <cstdint>

#include "vlab/operators.hpp"
#include "vlab/step_function.hpp"
#include "vlab/transform.hpp"

namespace vlab::reference {

CoefficientVector forward(const StepFunction& f);
StepFunction inverse(const CoefficientVector& c);

/// S_n by zeroing and serial synthesis.
StepFunction partial_sum(const CoefficientVector& c, std::uint64_t n);

/// L_n f = (1/l_n) sum_{k=1}^{n-1} S_k f / (n-k), partial sums recomputed each time.
StepFunction log_mean(const StepFunction& f, std::uint64_t n);

StepFunction weighted_maximal(const StepFunction& f, MeansKind kind, const WeightFunction& weight,
                              std::uint64_t n_max);

}  // namespace vlab::reference
