#include "vlab/reference.hpp"

#include <algorithm>
#include <cmath>

#include "vlab/error.hpp"
#include "vlab/means.hpp"

namespace vlab::reference {

namespace {

// One axis at a time: for every block above axis k and every offset below
// it, a length-m_k DFT with twiddles recomputed from root_of_unity.
std::vector<cplx> axis_transform(std::vector<cplx> data, const RadixSequence& rs, int sign) {
  std::vector<cplx> line;
  for (int k = 0; k < rs.depth(); ++k) {
    const int m = rs.radix(k);
    const std::uint64_t below = rs.scale(k);
    const std::uint64_t above = rs.size() / rs.scale(k + 1);
    line.resize(static_cast<std::size_t>(m));
    for (std::uint64_t hi = 0; hi < above; ++hi) {
      for (std::uint64_t lo = 0; lo < below; ++lo) {
        const std::uint64_t base = hi * rs.scale(k + 1) + lo;
        for (int t = 0; t < m; ++t) line[static_cast<std::size_t>(t)] = data[base + static_cast<std::uint64_t>(t) * below];
        for (int n = 0; n < m; ++n) {
          cplx acc{};
          for (int t = 0; t < m; ++t) acc += line[static_cast<std::size_t>(t)] * root_of_unity(sign * n * t, m);
          data[base + static_cast<std::uint64_t>(n) * below] = acc;
        }
      }
    }
  }
  return data;
}

}  // namespace

CoefficientVector forward(const StepFunction& f) {
  std::vector<cplx> data = axis_transform({f.values().begin(), f.values().end()}, f.radix(), -1);
  const double norm = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= norm;
  return CoefficientVector{f.radix(), std::move(data)};
}

StepFunction inverse(const CoefficientVector& c) {
  return StepFunction(c.radix, axis_transform(c.coeffs, c.radix, +1));
}

StepFunction partial_sum(const CoefficientVector& c, std::uint64_t n) {
  CoefficientVector head = c;
  for (std::uint64_t k = n; k < head.coeffs.size(); ++k) head.coeffs[k] = 0.0;
  return reference::inverse(head);
}

StepFunction log_mean(const StepFunction& f, std::uint64_t n) {
  const CoefficientVector c = forward(f);
  StepFunction acc(f.radix());
  for (std::uint64_t k = 1; k < n; ++k) {
    const StepFunction s = reference::partial_sum(c, k);
    const double w = 1.0 / static_cast<double>(n - k);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * s[i];
  }
  const double l = harmonic_l(n);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] /= l;
  return acc;
}

StepFunction weighted_maximal(const StepFunction& f, MeansKind kind, const WeightFunction& weight,
                              std::uint64_t n_max) {
  const CoefficientVector c = forward(f);
  const std::uint64_t start = kind == MeansKind::partial_sum ? 1 : 2;
  StepFunction out(f.radix());
  for (std::uint64_t n = start; n <= n_max; ++n) {
    StepFunction t = kind == MeansKind::partial_sum ? reference::partial_sum(c, std::min<std::uint64_t>(n, c.size()))
                                                    : reference::log_mean(f, n);
    const double phi = weight(n + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i].real(), std::abs(t[i]) / phi);
  }
  return out;
}

}  // namespace vlab::reference
