#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "vlab/error.hpp"
#include "vlab/means.hpp"
#include "vlab/operators.hpp"
#include "vlab/parallel.hpp"
#include "vlab/reference.hpp"
#include "vlab/transform.hpp"

using namespace vlab;

namespace {

RadixSequence rs_of(std::vector<int> r) { return build_radix(r); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected vlab::Error");
  return ErrorKind::ParseError;
}

// sup_n |T_n f(x)| / phi(n+1) straight from oracle coefficients.
std::vector<double> oracle_maximal(const StepFunction& f, MeansKind kind, const WeightFunction& w, std::uint64_t n_max) {
  const auto& rs = f.radix();
  const auto c = oracle::coefficients(f);
  std::vector<double> out(rs.size(), 0.0);
  for (std::uint64_t i = 0; i < rs.size(); ++i) {
    std::vector<cplx> s(n_max + 1);
    for (std::uint64_t k = 0; k <= n_max; ++k) s[k] = oracle::synth(c, std::min<std::uint64_t>(k, rs.size()), i, rs);
    for (std::uint64_t n = kind == MeansKind::partial_sum ? 1 : 2; n <= n_max; ++n) {
      cplx t = s[n];
      if (kind == MeansKind::log_mean) {
        t = 0.0;
        for (std::uint64_t k = 1; k < n; ++k) t += s[k] / static_cast<double>(n - k);
        t /= oracle::harmonic(n);
      }
      out[i] = std::max(out[i], std::abs(t) / w(n + 1));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("weight functions") {
  const auto pw = WeightFunction::power(1.0);
  CHECK(pw(3) == 3.0);
  CHECK(WeightFunction::power(0.0)(100) == 1.0);
  const auto lg = WeightFunction::log();
  CHECK(lg(1) == 1.0);
  CHECK(lg(2) == doctest::Approx(std::log(3.0)));
  for (std::uint64_t n = 1; n < 200; ++n) {
    CHECK(lg(n) >= 1.0);
    CHECK(lg(n + 1) >= lg(n));
  }
  CHECK(kind_of([] { WeightFunction::power(-0.5); }) == ErrorKind::InvalidWeight);
  CHECK(kind_of([&] { pw(0); }) == ErrorKind::InvalidWeight);
  CHECK(kind_of([] { WeightFunction::table({1.0, 0.5}); }) == ErrorKind::InvalidWeight);
  CHECK(kind_of([] { WeightFunction::table({2.0, 1.5}); }) == ErrorKind::InvalidWeight);
  CHECK(kind_of([] { WeightFunction::table({}); }) == ErrorKind::InvalidWeight);
  const auto tb = WeightFunction::table({1.0, 2.0, 2.5});
  CHECK(tb(2) == 2.0);
  CHECK(tb(50) == 2.5);

  CHECK(WeightFunction::parse("power", 0.5).alpha() == 1.0);
  CHECK(WeightFunction::parse("power:0.25", 0.5).alpha() == 0.25);
  CHECK(WeightFunction::parse("log", 0.5).family() == WeightFunction::Family::log);
  CHECK(kind_of([] { WeightFunction::parse("power:x", 0.5); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { WeightFunction::parse("exp", 0.5); }) == ErrorKind::ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "vlab_test_phi.txt";
  {
    std::ofstream out(path);
    out << "# phi table\n1\n1.5\n4\n";
  }
  const auto cw = WeightFunction::parse("custom:" + path.string(), 0.5);
  CHECK(cw.family() == WeightFunction::Family::table);
  CHECK(cw(3) == 4.0);
  std::filesystem::remove(path);
}

TEST_CASE("growth condition advisory") {
  CHECK(condition6_advisory(WeightFunction::power(1.0), 0.5) == Condition6::violated);
  CHECK(condition6_advisory(WeightFunction::parse("power", 0.3), 0.3) == Condition6::violated);
  CHECK(condition6_advisory(WeightFunction::power(0.5), 0.5) == Condition6::satisfied);
  CHECK(condition6_advisory(WeightFunction::power(2.0), 0.5) == Condition6::violated);
  CHECK(condition6_advisory(WeightFunction::log(), 0.5) == Condition6::satisfied);
  CHECK(condition6_advisory(WeightFunction::log(), 0.8) == Condition6::satisfied);
  CHECK(condition6_advisory(WeightFunction::table({1.0, 2.0}), 0.5) == Condition6::unknown);
  CHECK(to_string(Condition6::violated) == "violated");
}

TEST_CASE("weighted maximal examples") {
  const auto rs = rs_of({2, 2, 2, 2});
  const auto zero = weighted_maximal(StepFunction(rs), MeansKind::log_mean, WeightFunction::power(1.0), 16);
  CHECK(sup_norm(zero) == 0.0);
  const auto psi1 = character_values(1, rs);
  const auto m = weighted_maximal(psi1, MeansKind::partial_sum, WeightFunction::parse("power", 0.5), 16);
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(m[i].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(kind_of([&] { weighted_maximal(psi1, MeansKind::log_mean, WeightFunction::log(), 17); }) ==
        ErrorKind::IndexOutOfRange);
}

TEST_CASE("weighted maximal against the brute-force oracle") {
  std::mt19937_64 rng(73);
  for (const auto& r : std::vector<std::vector<int>>{{2, 3, 2}, {3, 3}, {2, 2, 2, 2}}) {
    const auto rs = rs_of(r);
    const auto f = oracle::random_fn(rng, rs);
    for (const auto& w : {WeightFunction::power(1.0), WeightFunction::log(), WeightFunction::table({1.0, 1.0, 2.0, 3.0})}) {
      for (auto kind : {MeansKind::partial_sum, MeansKind::log_mean}) {
        const std::uint64_t n_max = rs.size();
        const auto ref = oracle_maximal(f, kind, w, n_max);
        const auto got = weighted_maximal(f, kind, w, n_max);
        const auto ser = reference::weighted_maximal(f, kind, w, n_max);
        for (std::size_t i = 0; i < rs.size(); ++i) {
          CHECK(got[i].real() == doctest::Approx(ref[i]).epsilon(1e-9));
          CHECK(ser[i].real() == doctest::Approx(ref[i]).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("parallel weighted maximal agrees with the serial reference") {
  std::mt19937_64 rng(79);
  const int saved = max_threads();
  const auto rs = rs_of(std::vector<int>(12, 2));
  const auto f = oracle::random_fn(rng, rs);
  const auto w = WeightFunction::log();
  for (auto kind : {MeansKind::partial_sum, MeansKind::log_mean}) {
    const auto ser = reference::weighted_maximal(f, kind, w, 24);
    for (int threads : {1, 3}) {
      set_threads(threads);
      CHECK(max_abs_diff(weighted_maximal(f, kind, w, 24), ser) <= 1e-9);
    }
  }
  set_threads(saved);
}

TEST_CASE("pointwise domination of log means by partial sums") {
  std::mt19937_64 rng(83);
  const auto rs = rs_of(std::vector<int>(8, 2));
  for (double p : {0.3, 0.5, 0.8}) {
    const auto w = WeightFunction::parse("power", p);
    for (int t = 0; t < 3; ++t) {
      const auto f = oracle::random_fn(rng, rs);
      const auto res = domination_check(f, p, 200);
      CHECK(res.holds);
      CHECK(res.max_slack <= 1e-12);
      const auto lm = weighted_maximal(f, MeansKind::log_mean, w, 200);
      const auto ps = weighted_maximal(f, MeansKind::partial_sum, w, 200);
      for (std::size_t i = 0; i < lm.size(); ++i) CHECK(lm[i].real() <= ps[i].real() + 1e-12);
      CHECK(boundedness_ratio(f, p, w, 200) <= boundedness_ratio(f, p, w, 200, MeansKind::partial_sum) * (1 + 1e-12));
    }
  }
  const auto zero = domination_check(StepFunction(rs), 0.5, 100);
  CHECK(zero.holds);
  CHECK(zero.max_slack == 0.0);
  const auto rs3 = rs_of({2, 2, 2});
  const auto fk = add(dirichlet_closed(3, rs3), scale(dirichlet_closed(2, rs3), -1.0));
  CHECK(domination_check(fk, 0.5, 8).holds);
  CHECK(kind_of([&] { domination_check(fk, 1.0, 8); }) == ErrorKind::InvalidExponent);
  CHECK(kind_of([&] { domination_check(fk, 0.0, 8); }) == ErrorKind::InvalidExponent);
}

TEST_CASE("scaling invariance") {
  std::mt19937_64 rng(89);
  const auto rs = rs_of({2, 3, 2, 3});
  const auto f = oracle::random_fn(rng, rs);
  const auto w = WeightFunction::power(1.0);
  for (auto kind : {MeansKind::partial_sum, MeansKind::log_mean}) {
    const auto base = weighted_maximal(f, kind, w, 36);
    for (double c : {0.5, 4.0, 1e3}) {
      const auto sc = weighted_maximal(scale(f, c), kind, w, 36);
      for (std::size_t i = 0; i < sc.size(); ++i) CHECK(sc[i].real() == doctest::Approx(c * base[i].real()).epsilon(1e-12));
      const double r0 = boundedness_ratio(f, 0.5, w, 36, kind);
      const double r1 = boundedness_ratio(scale(f, c), 0.5, w, 36, kind);
      CHECK(std::abs(r1 - r0) <= 1e-12 * r0);
    }
  }
}

TEST_CASE("monotonicity in n_max and stabilization past M_N") {
  std::mt19937_64 rng(97);
  const auto rs = rs_of({2, 3, 2, 2});
  const auto f = oracle::random_fn(rng, rs);
  const auto w = WeightFunction::power(1.0);
  for (auto kind : {MeansKind::partial_sum, MeansKind::log_mean}) {
    StepFunction prev = weighted_maximal(f, kind, w, 2);
    for (std::uint64_t n = 3; n <= rs.size(); ++n) {
      const auto cur = weighted_maximal(f, kind, w, n);
      for (std::size_t i = 0; i < cur.size(); ++i) CHECK(cur[i].real() >= prev[i].real());
      prev = cur;
    }
  }
  const auto at_mn = weighted_maximal(f, MeansKind::partial_sum, w, rs.size());
  for (std::uint64_t extra : {1u, 5u, 100u}) {
    const auto beyond = weighted_maximal(f, MeansKind::partial_sum, w, rs.size() + extra);
    CHECK(max_abs_diff(beyond, at_mn) == 0.0);
  }
  // With a flat weight the tail repeats the value at n = M_N.
  const auto flat = WeightFunction::power(0.0);
  CHECK(max_abs_diff(weighted_maximal(f, MeansKind::partial_sum, flat, rs.size() + 7),
                     weighted_maximal(f, MeansKind::partial_sum, flat, rs.size())) <= 1e-12);
}

TEST_CASE("log-mean tail bound") {
  std::mt19937_64 rng(101);
  const auto rs = rs_of({2, 2, 2, 2, 2});
  const auto f = oracle::random_fn(rng, rs);
  const auto w = WeightFunction::log();
  const auto tb = log_mean_tail_bound(f, w, 10, 0.5);
  // Every L_n with n > 10 sits under the bound.
  for (std::uint64_t n = 11; n <= rs.size(); ++n) {
    const auto l = log_mean(f, n);
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(std::abs(l[i]) / w(n + 1) <= tb.sup + 1e-12);
  }
  CHECK(tb.lp <= tb.sup + 1e-12);
}

TEST_CASE("p-atoms") {
  std::mt19937_64 rng(103);
  const auto rs = rs_of({2, 3, 2, 2});
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int rank = t % rs.depth();
    const double p = (t % 3 == 0) ? 0.3 : (t % 3 == 1 ? 0.5 : 1.0);
    const auto a = make_atom(rng, rs, rank, p);
    REQUIRE(atom_is_valid(a));
    worst = std::max(worst, std::abs(integral(a.values)));
    CHECK(sup_norm(a.values) == doctest::Approx(std::pow(static_cast<double>(rs.scale(rank)), 1.0 / p)).epsilon(1e-12));
    for (std::size_t i = 0; i < a.values.size(); ++i)
      if (!a.support.contains(i, rs)) CHECK(a.values[i] == cplx{});
  }
  CHECK(worst <= 1e-12 * 16);

  const auto dy = rs_of({2, 2, 2});
  const auto a0 = make_atom(rng, dy, 0, 0.7);
  CHECK(sup_norm(a0.values) <= 1.0 + 1e-15);
  const auto a1 = make_atom(rng, dy, 1, 0.5);
  CHECK(sup_norm(a1.values) == doctest::Approx(4.0));
  CHECK(kind_of([&] { make_atom(rng, dy, 3, 0.5); }) == ErrorKind::RankOutOfRange);
  CHECK(kind_of([&] { make_atom(rng, dy, -1, 0.5); }) == ErrorKind::RankOutOfRange);
  CHECK(kind_of([&] { make_atom(rng, dy, 1, 1.5); }) == ErrorKind::InvalidExponent);

  Atom bad = a1;
  bad.values[0] += 1.0;
  bad.values[1] += 1.0;  // outside the rank-1 support of one of the two halves
  CHECK_FALSE(atom_is_valid(bad));
}

TEST_CASE("boundedness ratio") {
  const auto rs = rs_of({2, 2, 2, 2});
  const auto w = WeightFunction::power(1.0);
  CHECK(kind_of([&] { boundedness_ratio(StepFunction(rs), 0.5, w, 16); }) == ErrorKind::DegenerateInput);
  // f = c: L_n c = c l_{n-1}/l_n, so the ratio is max_n (1 - 1/(n l_n)) / (n+1).
  double expect = 0.0;
  for (std::uint64_t n = 2; n <= 16; ++n)
    expect = std::max(expect, (1.0 - 1.0 / (static_cast<double>(n) * oracle::harmonic(n))) / static_cast<double>(n + 1));
  CHECK(boundedness_ratio(StepFunction::constant(rs, 2.0), 0.5, w, 16) == doctest::Approx(expect).epsilon(1e-12));
}
