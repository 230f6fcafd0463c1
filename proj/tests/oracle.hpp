#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// into the library's numeric kernels; only RadixSequence is shared.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "vlab/group.hpp"
#include "vlab/step_function.hpp"

namespace oracle {

using vlab::cplx;
using vlab::RadixSequence;

inline std::vector<int> digits(std::uint64_t i, const RadixSequence& rs) {
  std::vector<int> d(static_cast<std::size_t>(rs.depth()));
  for (int k = 0; k < rs.depth(); ++k) {
    d[static_cast<std::size_t>(k)] = static_cast<int>(i % static_cast<std::uint64_t>(rs.radix(k)));
    i /= static_cast<std::uint64_t>(rs.radix(k));
  }
  return d;
}

/// psi_n(x_i) = exp(2 pi i sum_k n_k x_k / m_k), phase reduced mod 1 in long double.
inline cplx character(std::uint64_t n, std::uint64_t i, const RadixSequence& rs) {
  const auto dn = digits(n, rs);
  const auto dx = digits(i, rs);
  long double phase = 0.0L;
  for (int k = 0; k < rs.depth(); ++k) {
    const int m = rs.radix(k);
    const int r = (dn[static_cast<std::size_t>(k)] * dx[static_cast<std::size_t>(k)]) % m;
    phase += static_cast<long double>(r) / static_cast<long double>(m);
  }
  phase -= std::floor(phase);
  const long double ang = 2.0L * std::numbers::pi_v<long double> * phase;
  return {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
}

inline std::vector<cplx> coefficients(const vlab::StepFunction& f) {
  const auto& rs = f.radix();
  const std::uint64_t M = rs.size();
  std::vector<cplx> out(M);
  for (std::uint64_t k = 0; k < M; ++k) {
    std::complex<long double> acc{};
    for (std::uint64_t i = 0; i < M; ++i) {
      const cplx v = f[i] * std::conj(character(k, i, rs));
      acc += std::complex<long double>(v.real(), v.imag());
    }
    acc /= static_cast<long double>(M);
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

/// sum_{k<n} c_k psi_k at point i.
inline cplx synth(const std::vector<cplx>& c, std::uint64_t n, std::uint64_t i, const RadixSequence& rs) {
  cplx acc{};
  for (std::uint64_t k = 0; k < n; ++k) acc += c[k] * character(k, i, rs);
  return acc;
}

inline bool same_prefix(std::uint64_t a, std::uint64_t b, int n, const RadixSequence& rs) {
  return a % rs.scale(n) == b % rs.scale(n);
}

/// Average of f over the rank-n cylinder containing i.
inline cplx cylinder_average(const vlab::StepFunction& f, int n, std::uint64_t i) {
  const auto& rs = f.radix();
  cplx acc{};
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < rs.size(); ++j) {
    if (same_prefix(i, j, n, rs)) {
      acc += f[j];
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

inline std::vector<double> maximal(const vlab::StepFunction& f) {
  const auto& rs = f.radix();
  std::vector<double> out(rs.size(), 0.0);
  for (std::uint64_t i = 0; i < rs.size(); ++i)
    for (int n = 0; n <= rs.depth(); ++n) out[i] = std::max(out[i], std::abs(cylinder_average(f, n, i)));
  return out;
}

inline double lp(const std::vector<double>& v, double p) {
  long double acc = 0.0L;
  for (double x : v) acc += std::pow(static_cast<long double>(std::abs(x)), static_cast<long double>(p));
  return static_cast<double>(std::pow(acc / static_cast<long double>(v.size()), 1.0L / p));
}

inline double lp(const vlab::StepFunction& f, double p) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
  return lp(a, p);
}

inline double harmonic(std::uint64_t n) {
  long double acc = 0.0L;
  for (std::uint64_t j = n; j >= 1; --j) acc += 1.0L / static_cast<long double>(j);
  return static_cast<double>(acc);
}

inline vlab::StepFunction random_fn(std::mt19937_64& rng, const RadixSequence& rs) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(rs.size());
  for (auto& z : v) z = {u(rng), u(rng)};
  return vlab::StepFunction(rs, std::move(v));
}

inline vlab::StepFunction random_real(std::mt19937_64& rng, const RadixSequence& rs) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(rs.size());
  for (auto& z : v) z = {u(rng), 0.0};
  return vlab::StepFunction(rs, std::move(v));
}

inline double max_diff(const vlab::StepFunction& a, const vlab::StepFunction& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace oracle
