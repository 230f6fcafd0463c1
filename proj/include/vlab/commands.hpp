#pragma once

// Subcommand bodies. Each writes its CSV to `csv` and human-readable
// progress/check lines to `log`, and returns the number of failed checks.

#include <cstdint>
#include <iosfwd>
#include <random>

#include "vlab/config.hpp"
#include "vlab/step_function.hpp"

namespace vlab {

/// Independent generator for task `task` of stream `stream` under one seed.
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t task);

/// Real and imaginary parts uniform on [-1, 1].
StepFunction random_function(std::mt19937_64& rng, const RadixSequence& rs);

int cmd_transform(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
int cmd_theorem_a(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
int cmd_theorem_b(const RunConfig& cfg, std::ostream& csv, std::ostream& log, std::ostream* theta_csv = nullptr);
int cmd_norms(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
int cmd_case(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

}  // namespace vlab
