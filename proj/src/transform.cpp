#include "vlab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "vlab/error.hpp"
#include "vlab/parallel.hpp"

namespace vlab {

namespace {

void require_point(const GroupPoint& x, const RadixSequence& rs) {
  if (x.digits.size() != static_cast<std::size_t>(rs.depth())) {
    throw Error(ErrorKind::CoordinateOutOfRange, "point has " + std::to_string(x.digits.size()) +
                                                     " digits, group depth is " + std::to_string(rs.depth()));
  }
  for (int k = 0; k < rs.depth(); ++k) {
    const int d = x.digits[static_cast<std::size_t>(k)];
    if (d < 0 || d >= rs.radix(k)) throw Error(ErrorKind::CoordinateOutOfRange, "digit out of range");
  }
}

std::vector<cplx> root_table(int m, int sign) {
  std::vector<cplx> w(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) w[static_cast<std::size_t>(r)] = root_of_unity(sign * r, m);
  return w;
}

}  // namespace

cplx rademacher(int k, const GroupPoint& x, const RadixSequence& rs) {
  if (k < 0 || k >= rs.depth() || static_cast<std::size_t>(k) >= x.digits.size()) {
    throw Error(ErrorKind::CoordinateOutOfRange, "coordinate " + std::to_string(k));
  }
  const int d = x.digits[static_cast<std::size_t>(k)];
  if (d < 0 || d >= rs.radix(k)) throw Error(ErrorKind::CoordinateOutOfRange, "digit out of range");
  return root_of_unity(d, rs.radix(k));
}

cplx vilenkin_char(std::uint64_t n, const GroupPoint& x, const RadixSequence& rs) {
  require_point(x, rs);
  const MixedRadixIndex idx = decompose(n, rs);
  cplx value{1.0, 0.0};
  for (int k = 0; k <= idx.order; ++k) {
    const int nk = idx.digits[static_cast<std::size_t>(k)];
    if (nk == 0) continue;
    value *= root_of_unity(nk * x.digits[static_cast<std::size_t>(k)], rs.radix(k));
  }
  return value;
}

void character_values_into(std::uint64_t n, const RadixSequence& rs, std::span<cplx> out) {
  if (out.size() != rs.size()) throw Error(ErrorKind::ResolutionMismatch, "output length differs from M_N");
  const MixedRadixIndex idx = decompose(n, rs);
  // psi_n only sees digits 0..|n|; build it on the rank-(|n|+1) block and tile.
  const int active = idx.order + 1;
  std::size_t len = 1;
  out[0] = cplx{1.0, 0.0};
  for (int k = 0; k < active; ++k) {
    const int m = rs.radix(k);
    const int nk = idx.digits[static_cast<std::size_t>(k)];
    for (int t = m - 1; t >= 0; --t) {
      const cplx w = root_of_unity(nk * t, m);
      for (std::size_t s = 0; s < len; ++s) out[static_cast<std::size_t>(t) * len + s] = out[s] * w;
    }
    len *= static_cast<std::size_t>(m);
  }
  for (std::size_t i = len; i < out.size(); ++i) out[i] = out[i % len];
}

StepFunction character_values(std::uint64_t n, const RadixSequence& rs) {
  StepFunction out(rs);
  character_values_into(n, rs, out.mutable_values());
  return out;
}

CoefficientVector forward_naive(const StepFunction& f) {
  const RadixSequence& rs = f.radix();
  const int depth = rs.depth();
  const auto total = static_cast<std::int64_t>(rs.size());
  // Digit table and per-axis roots; psi_k(x) is then a product of <= N table
  // lookups, evaluated afresh for every (k, x) pair.
  std::vector<int> digits(static_cast<std::size_t>(total) * static_cast<std::size_t>(depth));
  std::vector<int> order(static_cast<std::size_t>(total));
  for (std::int64_t i = 0; i < total; ++i) {
    const MixedRadixIndex idx = decompose(static_cast<std::uint64_t>(i), rs);
    std::copy(idx.digits.begin(), idx.digits.end(), digits.begin() + i * depth);
    order[static_cast<std::size_t>(i)] = idx.order;
  }
  std::vector<std::vector<cplx>> roots(static_cast<std::size_t>(depth));
  for (int k = 0; k < depth; ++k) roots[static_cast<std::size_t>(k)] = root_table(rs.radix(k), -1);

  CoefficientVector out{rs, std::vector<cplx>(rs.size())};
  const double norm = 1.0 / static_cast<double>(rs.size());
#pragma omp parallel for schedule(static) if (total >= 64)
  for (std::int64_t k = 0; k < total; ++k) {
    const int* nk = digits.data() + k * depth;
    const int top = order[static_cast<std::size_t>(k)];
    cplx acc{};
    for (std::int64_t x = 0; x < total; ++x) {
      const int* xd = digits.data() + x * depth;
      cplx conj_char{1.0, 0.0};
      for (int j = 0; j <= top; ++j) {
        const int m = rs.radix(j);
        conj_char *= roots[static_cast<std::size_t>(j)][static_cast<std::size_t>((nk[j] * xd[j]) % m)];
      }
      acc += f[static_cast<std::size_t>(x)] * conj_char;
    }
    out.coeffs[static_cast<std::size_t>(k)] = acc * norm;
  }
  return out;
}

namespace detail {

void tensor_dft(std::vector<cplx>& data, const RadixSequence& rs, int sign, OpCount* ops) {
  std::vector<cplx> scratch(data.size());
  const std::uint64_t total = rs.size();
  for (int k = 0; k < rs.depth(); ++k) {
    const int m = rs.radix(k);
    const std::uint64_t stride = rs.scale(k);
    const std::uint64_t block = rs.scale(k + 1);
    const auto lines = static_cast<std::int64_t>(total / static_cast<std::uint64_t>(m));
    const std::vector<cplx> w = root_table(m, sign);
    const cplx* in = data.data();
    cplx* out = scratch.data();
#pragma omp parallel for schedule(static) if (lines >= kParallelGrain)
    for (std::int64_t j = 0; j < lines; ++j) {
      const auto uj = static_cast<std::uint64_t>(j);
      const std::uint64_t base = (uj / stride) * block + uj % stride;
      for (int n = 0; n < m; ++n) {
        cplx acc{};
        for (int t = 0; t < m; ++t) {
          acc += in[base + static_cast<std::uint64_t>(t) * stride] * w[static_cast<std::size_t>((n * t) % m)];
        }
        out[base + static_cast<std::uint64_t>(n) * stride] = acc;
      }
    }
    data.swap(scratch);
    if (ops) ops->mac += total * static_cast<std::uint64_t>(m);
  }
}

}  // namespace detail

CoefficientVector forward_fast(const StepFunction& f, OpCount* ops) {
  std::vector<cplx> data(f.values().begin(), f.values().end());
  detail::tensor_dft(data, f.radix(), -1, ops);
  const double norm = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= norm;
  return CoefficientVector{f.radix(), std::move(data)};
}

StepFunction inverse(const CoefficientVector& c, OpCount* ops) {
  if (c.coeffs.size() != c.radix.size()) {
    throw Error(ErrorKind::ResolutionMismatch, "coefficient count does not match M_N");
  }
  std::vector<cplx> data = c.coeffs;
  detail::tensor_dft(data, c.radix, +1, ops);
  return StepFunction(c.radix, std::move(data));
}

StepFunction dirichlet_kernel(std::uint64_t n, const RadixSequence& rs) {
  if (n < 1 || n > rs.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "D_n needs 1 <= n <= M_N, got n = " + std::to_string(n));
  }
  CoefficientVector c{rs, std::vector<cplx>(rs.size())};
  for (std::uint64_t k = 0; k < n; ++k) c.coeffs[k] = 1.0;
  return inverse(c);
}

StepFunction dirichlet_closed(int n, const RadixSequence& rs) {
  if (n < 0 || n > rs.depth()) {
    throw Error(ErrorKind::RankOutOfRange, "rank " + std::to_string(n) + " outside [0, N]");
  }
  const std::uint64_t mn = rs.scale(n);
  StepFunction out(rs);
  // x in I_n iff its first n digits vanish iff i mod M_n == 0.
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % mn == 0) out[i] = static_cast<double>(mn);
  }
  return out;
}

StepFunction partial_sum(const CoefficientVector& c, std::uint64_t n) {
  if (n > c.radix.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "S_n needs n <= M_N, got n = " + std::to_string(n));
  }
  CoefficientVector head = c;
  for (std::uint64_t k = n; k < head.coeffs.size(); ++k) head.coeffs[k] = 0.0;
  return inverse(head);
}

StepFunction partial_sum(const StepFunction& f, std::uint64_t n) {
  if (n > f.radix().size()) {
    throw Error(ErrorKind::IndexOutOfRange, "S_n needs n <= M_N, got n = " + std::to_string(n));
  }
  return partial_sum(forward_fast(f), n);
}

void write_coefficients(std::ostream& os, const CoefficientVector& c) {
  write_grid(os, GridFile{c.radix, true, c.coeffs});
}

CoefficientVector read_coefficients(std::istream& is) {
  GridFile grid = read_grid(is);
  if (!grid.coeffs) throw Error(ErrorKind::ParseError, "file lacks kind=coeffs");
  return CoefficientVector{std::move(grid.radix), std::move(grid.values)};
}

}  // namespace vlab
