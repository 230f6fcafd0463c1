#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vlab/commands.hpp"
#include "vlab/config.hpp"
#include "vlab/error.hpp"
#include "vlab/step_function.hpp"

using namespace vlab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected vlab::Error");
  return ErrorKind::ParseError;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

TEST_CASE("config file and value parsing") {
  const auto path = std::filesystem::temp_directory_path() / "vlab_test.cfg";
  {
    std::ofstream out(path);
    out << "# comment\nradices = 2,3\n\ndepth=4  # trailing\np=0.3,0.5\nweight=log\ntheta-out=t.csv\nnk=1,2\n";
  }
  const auto kv = read_config_file(path.string());
  CHECK(kv.at("radices") == "2,3");
  CHECK(kv.at("depth") == "4");
  RunConfig cfg;
  for (const auto& [k, v] : kv) apply_config_value(cfg, k, v);
  CHECK(cfg.radices == "2,3");
  CHECK(cfg.depth == 4);
  CHECK(cfg.p == std::vector<double>{0.3, 0.5});
  CHECK(cfg.weight == "log");
  CHECK(cfg.theta_out == "t.csv");
  CHECK(cfg.nk == std::vector<int>{1, 2});
  const auto rs = resolve_radix(cfg, 8);
  CHECK(rs.radices() == std::vector<int>{2, 3, 2, 3});
  std::filesystem::remove(path);

  CHECK(kind_of([&] { apply_config_value(cfg, "colour", "red"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([&] { apply_config_value(cfg, "depth", "four"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([&] { apply_config_value(cfg, "p", "0.5,"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([&] { apply_config_value(cfg, "nk", "1.5"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { read_config_file("/nonexistent/vlab.cfg"); }) == ErrorKind::ConfigError);
  RunConfig empty;
  empty.radices = "";
  CHECK(kind_of([&] { resolve_radix(empty, 4); }) == ErrorKind::ConfigError);
  CHECK(join_doubles({0.5, 0.25}) == "0.5,0.25");
  CHECK(join_ints({1, 2, 3}) == "1,2,3");
}

TEST_CASE("task streams are deterministic and distinct") {
  auto a = task_rng(7, 1, 3);
  auto b = task_rng(7, 1, 3);
  auto c = task_rng(7, 1, 4);
  auto d = task_rng(7, 2, 3);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
}

TEST_CASE("transform command") {
  RunConfig cfg;
  cfg.depth = 12;
  cfg.samples = 2;
  std::ostringstream csv, log;
  CHECK(cmd_transform(cfg, csv, log) == 0);
  const auto rows = data_lines(csv.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "sample_id,M_N,roundtrip_err,parseval_err,fast_naive_err,ops_fast,ops_naive,op_ratio,t_fast_us,t_naive_us,pass");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    REQUIRE(f.size() == 11);
    CHECK(f[1] == "4096");
    CHECK(std::stod(f[3]) <= 1e-9);
    CHECK(std::stod(f[7]) < 0.1);
    CHECK(f[10] == "1");
  }
  RunConfig bad;
  bad.radices = "";
  std::ostringstream c2, l2;
  CHECK(kind_of([&] { cmd_transform(bad, c2, l2); }) == ErrorKind::ConfigError);
}

TEST_CASE("theorem-a command") {
  RunConfig cfg;
  cfg.depth = 6;
  cfg.samples = 4;
  std::ostringstream csv, log;
  CHECK(cmd_theorem_a(cfg, csv, log) == 0);
  const auto rows = data_lines(csv.str());
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "sample_id,p,weight,nmax,hardy_norm,maximal_lp,ratio");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    REQUIRE(f.size() == 7);
    CHECK(std::isfinite(std::stod(f[6])));
  }
  CHECK(log.str().find("FAIL") == std::string::npos);

  cfg.samples = 0;
  std::ostringstream c0, l0;
  CHECK(cmd_theorem_a(cfg, c0, l0) == 0);
  CHECK(data_lines(c0.str()).size() == 1);
}

TEST_CASE("theorem-b command") {
  RunConfig cfg;
  cfg.nk = {1, 2, 3, 4};
  cfg.samples = 2;
  cfg.depth = 6;
  std::ostringstream csv, log, theta;
  CHECK(cmd_theorem_b(cfg, csv, log, &theta) == 0);
  const auto text = csv.str();
  CHECK(text.find("# condition6: satisfied") != std::string::npos);
  const auto rows = data_lines(text);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "k,n_k,M_2nk,n_star,p,phi,l_nstar,L_modulus,hardy_norm,R_k,comparator");
  const auto first = split(rows[1]);
  CHECK(first[3] == "6");
  CHECK(std::abs(std::stod(first[7]) - 20.0 / 49.0) <= 1e-12);
  CHECK(std::abs(std::stod(first[8]) - 0.25) <= 1e-12);
  double prev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r = std::stod(split(rows[i])[9]);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(theta.str().find("kind,n,value,lower,upper") != std::string::npos);
  CHECK(theta.str().find("exploratory") != std::string::npos);
  CHECK(theta.str().find("sharp") == std::string::npos);

  // Same config, same bytes.
  std::ostringstream csv2, log2, theta2;
  cmd_theorem_b(cfg, csv2, log2, &theta2);
  CHECK(csv2.str() == text);
  CHECK(theta2.str() == theta.str());

  RunConfig weak = cfg;
  weak.weight = "power";
  weak.nk = {1, 2};
  std::ostringstream c3, l3;
  CHECK(cmd_theorem_b(weak, c3, l3) == 0);
  CHECK(c3.str().find("# condition6: violated") != std::string::npos);
  CHECK(l3.str().find("monotonicity assertion skipped") != std::string::npos);
}

TEST_CASE("norms and case commands") {
  RunConfig cfg;
  cfg.depth = 4;
  cfg.dirichlet_rank = 2;
  cfg.p = {0.5};
  std::ostringstream csv, log;
  CHECK(cmd_norms(cfg, csv, log) == 0);
  const auto rows = data_lines(csv.str());
  REQUIRE(rows.size() == 2);
  const auto f = split(rows[1]);
  CHECK(std::stod(f[1]) == doctest::Approx(0.25));
  CHECK(std::stod(f[2]) == doctest::Approx(0.25));
  // f* = 4 on I_2, 2 on I_1 minus I_2 and 1 elsewhere.
  const double root = 2.0 / 4.0 + std::sqrt(2.0) / 4.0 + 1.0 / 2.0;
  CHECK(std::stod(f[3]) == doctest::Approx(root * root).epsilon(1e-12));

  const auto dump = std::filesystem::temp_directory_path() / "vlab_case_dump.txt";
  RunConfig kc;
  kc.case_nk = 1;
  kc.p = {0.3, 0.5, 0.8};
  kc.dump = dump.string();
  std::ostringstream c2, l2;
  CHECK(cmd_case(kc, c2, l2) == 0);
  CHECK(data_lines(c2.str()).size() == 1 + 4 + 3);

  RunConfig nc;
  nc.in = dump.string();
  nc.p = {0.5};
  std::ostringstream c3, l3;
  CHECK(cmd_norms(nc, c3, l3) == 0);
  const auto r3 = split(data_lines(c3.str())[1]);
  CHECK(std::stod(r3[3]) == doctest::Approx(0.25).epsilon(1e-12));
  std::filesystem::remove(dump);
}
