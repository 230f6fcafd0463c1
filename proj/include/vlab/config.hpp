#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vlab/group.hpp"

namespace vlab {

inline constexpr const char* kVersion = "0.1.0";

/// Settings shared by all subcommands. Unset optionals fall back to the
/// subcommand's documented default.
struct RunConfig {
  std::string radices = "2";
  std::optional<int> depth;
  std::vector<double> p{0.5};
  std::optional<std::string> weight;
  std::optional<std::uint64_t> nmax;
  std::optional<int> samples;
  std::uint64_t seed = 1;
  std::string out;        // empty: stdout
  std::string theta_out;  // theorem-b bracket rows; empty: log stream
  std::vector<int> nk{1, 2, 3, 4, 5, 6};
  int case_nk = 1;
  std::string in;  // norms: StepFunction file
  std::optional<int> dirichlet_rank;
  std::string dump;  // case: write f_{n_k} here
};

/// Reads flat `key=value` lines; '#' starts a comment. Keys match the long
/// CLI flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Throws ConfigError on unknown keys or malformed values.
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<double> parse_double_list(const std::string& csv);
std::vector<int> parse_int_list(const std::string& csv);

/// Radices from cfg.radices, repeated cyclically when the depth asks for
/// more coordinates than were listed.
RadixSequence resolve_radix(const RunConfig& cfg, int default_depth);

std::string join_doubles(const std::vector<double>& xs);
std::string join_ints(const std::vector<int>& xs);

}  // namespace vlab
