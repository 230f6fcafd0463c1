#pragma once

// Vilenkin characters and Fourier analysis on the truncated group.
//
// psi_n(x) = prod_k r_k(x)^{n_k} with r_k(x) = exp(2 pi i x_k / m_k), so the
// system is the tensor product of the coordinate DFT characters. Forward
// transforms carry the 1/M_N normalization (coefficients are integrals);
// synthesis is unnormalized.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vlab/group.hpp"
#include "vlab/step_function.hpp"

namespace vlab {

struct CoefficientVector {
  RadixSequence radix;
  std::vector<cplx> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
};

/// Complex multiply-adds performed by a transform.
struct OpCount {
  std::uint64_t mac = 0;
};

cplx rademacher(int k, const GroupPoint& x, const RadixSequence& rs);
cplx vilenkin_char(std::uint64_t n, const GroupPoint& x, const RadixSequence& rs);

/// psi_n evaluated on every rank-N cylinder in O(M_N).
StepFunction character_values(std::uint64_t n, const RadixSequence& rs);
/// Same, written into `out` (length M_N) without allocating the result.
void character_values_into(std::uint64_t n, const RadixSequence& rs, std::span<cplx> out);

/// Direct O(M_N^2) evaluation of f^(k) = (1/M_N) sum_x f(x) conj(psi_k(x)).
CoefficientVector forward_naive(const StepFunction& f);

/// N axis passes, each a size-m_k DFT along coordinate k.
CoefficientVector forward_fast(const StepFunction& f, OpCount* ops = nullptr);

/// Synthesis sum_k c_k psi_k.
StepFunction inverse(const CoefficientVector& c, OpCount* ops = nullptr);

/// D_n = sum_{k<n} psi_k, 1 <= n <= M_N.
StepFunction dirichlet_kernel(std::uint64_t n, const RadixSequence& rs);

/// D_{M_n} = M_n on I_n, 0 elsewhere.
StepFunction dirichlet_closed(int n, const RadixSequence& rs);

/// S_n f = sum_{k<n} f^(k) psi_k; S_0 f = 0.
StepFunction partial_sum(const StepFunction& f, std::uint64_t n);
StepFunction partial_sum(const CoefficientVector& c, std::uint64_t n);

void write_coefficients(std::ostream& os, const CoefficientVector& c);
CoefficientVector read_coefficients(std::istream& is);

namespace detail {
/// In-place tensor DFT over all axes. sign = -1 for analysis, +1 for
/// synthesis; no normalization.
void tensor_dft(std::vector<cplx>& data, const RadixSequence& rs, int sign, OpCount* ops);
}  // namespace detail

}  // namespace vlab
