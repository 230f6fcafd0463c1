#include "vlab/config.hpp"

#include <cctype>
#include <fstream>

#include "vlab/error.hpp"
#include "vlab/step_function.hpp"

namespace vlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw Error(ErrorKind::ConfigError, key + ": not an integer: " + value);
  return v;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigError, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    const std::string tok = trim(csv.substr(pos, comma - pos));
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) throw Error(ErrorKind::ConfigError, "bad number '" + tok + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_double_list(csv)) {
    if (v != static_cast<double>(static_cast<int>(v))) throw Error(ErrorKind::ConfigError, "not an integer: " + csv);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "radices") cfg.radices = value;
  else if (key == "depth") cfg.depth = static_cast<int>(parse_integer(key, value));
  else if (key == "p") cfg.p = parse_double_list(value);
  else if (key == "weight") cfg.weight = value;
  else if (key == "nmax") cfg.nmax = static_cast<std::uint64_t>(parse_integer(key, value));
  else if (key == "samples") cfg.samples = static_cast<int>(parse_integer(key, value));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  else if (key == "out") cfg.out = value;
  else if (key == "theta-out") cfg.theta_out = value;
  else if (key == "nk") cfg.nk = parse_int_list(value);
  else if (key == "in") cfg.in = value;
  else if (key == "dirichlet-rank") cfg.dirichlet_rank = static_cast<int>(parse_integer(key, value));
  else if (key == "dump") cfg.dump = value;
  else throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
}

RadixSequence resolve_radix(const RunConfig& cfg, int default_depth) {
  std::vector<int> pattern;
  try {
    pattern = parse_radix_list(cfg.radices);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, std::string("radices: ") + e.what());
  }
  const int depth = cfg.depth.value_or(default_depth);
  if (depth < 0) throw Error(ErrorKind::ConfigError, "depth must be >= 0");
  return build_radix(repeat_pattern(pattern, depth));
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_double(xs[i]);
  }
  return s;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace vlab
