// vlab: experiments on bounded Vilenkin groups.
//
//   vlab transform  [--radices 2 --depth 12 --samples 3]
//   vlab theorem-a  [--p 0.5 --weight power --nmax <M_N> --samples 20 --seed 1]
//   vlab theorem-b  [--nk 1,2,3,4,5,6 --p 0.5 --weight log --theta-out theta.csv]
//   vlab norms      [--in f.txt | --dirichlet-rank n] [--p 0.3,0.5,0.8]
//   vlab case --nk 1 [--dump f.txt]
//
// Every subcommand accepts --config <file> (flat key=value, keys are the long
// flag names); flags given on the command line take precedence.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vlab/commands.hpp"
#include "vlab/config.hpp"
#include "vlab/error.hpp"
#include "vlab/parallel.hpp"

namespace {

struct Flags {
  std::string config;
  std::string radices;
  int depth = 0;
  std::string p;
  std::string weight;
  std::uint64_t nmax = 0;
  int samples = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string theta_out;
  std::string nk;
  std::string in;
  int dirichlet_rank = 0;
  std::string dump;
};

struct Bound {
  std::map<std::string, CLI::Option*> options;
};

Bound add_common(CLI::App& app, Flags& f, const std::string& default_depth, const std::string& default_samples,
                 const std::string& default_weight) {
  Bound b;
  app.add_option("--config", f.config, "flat key=value file; command-line flags win");
  b.options["radices"] = app.add_option("--radices", f.radices, "radix pattern, repeated to --depth [default: 2]");
  b.options["depth"] = app.add_option("--depth", f.depth, "retained coordinates N [default: " + default_depth + "]");
  b.options["p"] = app.add_option("--p", f.p, "exponent list, comma separated [default: 0.5]");
  b.options["seed"] = app.add_option("--seed", f.seed, "master seed [default: 1]");
  b.options["out"] = app.add_option("--out", f.out, "CSV output path [default: stdout]");
  if (!default_samples.empty()) {
    b.options["samples"] = app.add_option("--samples", f.samples, "random samples [default: " + default_samples + "]");
  }
  if (!default_weight.empty()) {
    b.options["weight"] = app.add_option(
        "--weight", f.weight,
        "power:<alpha> | power (alpha = 1/p - 1) | log | custom:<file> [default: " + default_weight + "]");
  }
  return b;
}

vlab::RunConfig assemble(const Flags& f, const Bound& b) {
  vlab::RunConfig cfg;
  std::map<std::string, std::string> values;
  if (!f.config.empty()) values = vlab::read_config_file(f.config);
  auto given = [&](const char* key) {
    auto it = b.options.find(key);
    return it != b.options.end() && it->second->count() > 0;
  };
  // Command-line values replace file values key by key.
  if (given("radices")) values["radices"] = f.radices;
  if (given("depth")) values["depth"] = std::to_string(f.depth);
  if (given("p")) values["p"] = f.p;
  if (given("seed")) values["seed"] = std::to_string(f.seed);
  if (given("out")) values["out"] = f.out;
  if (given("samples")) values["samples"] = std::to_string(f.samples);
  if (given("weight")) values["weight"] = f.weight;
  if (given("nmax")) values["nmax"] = std::to_string(f.nmax);
  if (given("theta-out")) values["theta-out"] = f.theta_out;
  if (given("nk")) values["nk"] = f.nk;
  if (given("in")) values["in"] = f.in;
  if (given("dirichlet-rank")) values["dirichlet-rank"] = std::to_string(f.dirichlet_rank);
  if (given("dump")) values["dump"] = f.dump;
  for (const auto& [key, value] : values) vlab::apply_config_value(cfg, key, value);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  vlab::apply_thread_limit_from_env();

  CLI::App app{"vlab: Vilenkin-group harmonic analysis experiments (threads capped by VLAB_THREADS)"};
  app.require_subcommand(1);

  Flags f;
  auto* transform = app.add_subcommand("transform", "round trip, Parseval and fast-vs-naive transform table");
  Bound b_transform = add_common(*transform, f, "12", "3", "");

  auto* theorem_a = app.add_subcommand("theorem-a", "domination checks and atom ratio sweep for weighted log means");
  Bound b_a = add_common(*theorem_a, f, "8", "20", "power");
  b_a.options["nmax"] = theorem_a->add_option("--nmax", f.nmax, "largest mean index [default: M_N]");

  auto* theorem_b = app.add_subcommand("theorem-b", "counterexample checks, divergence sweep and Theta bracket");
  Bound b_b = add_common(*theorem_b, f, "8 (atoms only)", "8", "log");
  b_b.options["nk"] = theorem_b->add_option("--nk", f.nk, "n_k list [default: 1,2,3,4,5,6]");
  b_b.options["theta-out"] = theorem_b->add_option("--theta-out", f.theta_out, "CSV path for bracket rows [default: log]");

  auto* norms = app.add_subcommand("norms", "L_p, weak-L_p and Hardy quasi-norms of a step function");
  Bound b_norms = add_common(*norms, f, "4", "", "");
  b_norms.options["in"] = norms->add_option("--in", f.in, "step-function file");
  b_norms.options["dirichlet-rank"] =
      norms->add_option("--dirichlet-rank", f.dirichlet_rank, "use D_{M_n} instead of --in [default: N]");

  auto* kase = app.add_subcommand("case", "verify a single counterexample case");
  Bound b_case = add_common(*kase, f, "2 n_k + 1", "", "");
  int case_nk = 1;
  kase->add_option("--nk", case_nk, "n_k [default: 1]");
  b_case.options["dump"] = kase->add_option("--dump", f.dump, "write f_{n_k} in step-function format");

  CLI11_PARSE(app, argc, argv);

  try {
    vlab::RunConfig cfg;
    std::ostringstream csv;
    int failures = 0;
    std::ofstream theta_file;
    if (*transform) {
      cfg = assemble(f, b_transform);
      failures = vlab::cmd_transform(cfg, csv, std::cerr);
    } else if (*theorem_a) {
      cfg = assemble(f, b_a);
      failures = vlab::cmd_theorem_a(cfg, csv, std::cerr);
    } else if (*theorem_b) {
      cfg = assemble(f, b_b);
      std::ostream* theta = nullptr;
      if (!cfg.theta_out.empty()) {
        theta_file.open(cfg.theta_out);
        if (!theta_file) throw vlab::Error(vlab::ErrorKind::ConfigError, "cannot write " + cfg.theta_out);
        theta = &theta_file;
      }
      failures = vlab::cmd_theorem_b(cfg, csv, std::cerr, theta);
    } else if (*norms) {
      cfg = assemble(f, b_norms);
      failures = vlab::cmd_norms(cfg, csv, std::cerr);
    } else if (*kase) {
      cfg = assemble(f, b_case);
      cfg.case_nk = case_nk;
      failures = vlab::cmd_case(cfg, csv, std::cerr);
    }
    if (cfg.out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) throw vlab::Error(vlab::ErrorKind::ConfigError, "cannot write " + cfg.out);
      out << csv.str();
    }
    if (failures > 0) {
      std::cerr << failures << " check(s) failed\n";
      return 1;
    }
  } catch (const vlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
