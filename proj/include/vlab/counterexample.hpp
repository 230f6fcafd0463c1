#pragma once

// The test functions f_{n_k} = D_{M_{2n_k+1}} - D_{M_{2n_k}} behind the
// unboundedness of sup_n |L_n f| / phi(n+1) when phi grows too slowly, with
// checks of their coefficients, partial sums, Hardy norms and the logarithmic
// mean at n* = M_{2n_k} + 2.

#include <cstdint>
#include <string>
#include <vector>

#include "vlab/group.hpp"
#include "vlab/operators.hpp"
#include "vlab/step_function.hpp"

namespace vlab {

struct CounterexampleCase {
  int nk = 1;
  RadixSequence radix;     // truncated to depth 2 n_k + 1
  std::uint64_t m_low = 0;   // M_{2 n_k}
  std::uint64_t m_high = 0;  // M_{2 n_k + 1}
  std::uint64_t n_star = 0;  // M_{2 n_k} + 2
  StepFunction f;
};

/// Throws DepthTooSmall when rs has fewer than 2 n_k + 1 coordinates.
CounterexampleCase build_case(int nk, const RadixSequence& rs);

struct CheckReport {
  bool ok = true;
  double max_error = 0.0;
  std::vector<std::string> violations;

  void record(double err, double tol, const std::string& where);
};

/// f^(i) = 1 on [M_{2n_k}, M_{2n_k+1}), 0 elsewhere.
CheckReport verify_coefficients(const CounterexampleCase& c, double tol = 1e-9);

/// S_i f = 0 for i <= M_{2n_k}; D_i - D_{M_{2n_k}} strictly between the two
/// scales; f from M_{2n_k+1} on. Checks every i in [0, M_N].
CheckReport verify_partial_sums(const CounterexampleCase& c, double tol = 1e-9);

/// ||f||_{H_p}^p = (M_hi - M_lo)^p / M_hi + M_lo^p (1/M_lo - 1/M_hi).
double closed_hardy_norm(std::uint64_t m_low, std::uint64_t m_high, double p);

struct HardyBound {
  double norm = 0.0;
  double closed = 0.0;
  double bound = 0.0;  // 2^{1/p} M_{2n_k}^{1-1/p}
  double relative_error = 0.0;
  bool maximal_equals_abs = false;
  bool ok = false;
};

HardyBound verify_hardy_bound(const CounterexampleCase& c, double p);

struct LMeanIdentity {
  double min_modulus = 0.0;
  double max_modulus = 0.0;
  double predicted = 0.0;          // 1 / l_{n*}
  double max_error = 0.0;          // sup |L_{n*} f - psi_{M_{2n_k}} / l_{n*}|
  double modulus_variance = 0.0;
  double level_set_measure = 0.0;  // mu{|L_{n*} f| >= 1/l_{n*}}
  bool ok = false;
};

LMeanIdentity l_mean_identity(const CounterexampleCase& c, double tol = 1e-9);

struct SweepRow {
  int k = 0;
  int nk = 0;
  std::uint64_t m_low = 0;
  std::uint64_t n_star = 0;
  double p = 0.0;
  double phi = 0.0;
  double l_nstar = 0.0;
  double l_modulus = 0.0;
  double hardy_norm = 0.0;
  double level_measure = 0.0;
  double ratio = 0.0;       // R_k
  double comparator = 0.0;  // M^{1/p-1} / (log(M+2) phi)
};

struct SweepReport {
  std::vector<SweepRow> rows;
  Condition6 condition6 = Condition6::unknown;
  bool monotone_checked = false;
  bool monotone_ok = true;
  std::string weight_label;
};

/// One case per entry of nk_list, radices taken from `pattern` repeated to
/// depth 2 n_k + 1. Throws CapacityExceeded before doing any work when a
/// case does not fit.
SweepReport divergence_sweep(const std::vector<int>& nk_list, double p, const WeightFunction& weight,
                             const std::vector<int>& pattern);

struct ThetaRow {
  std::string kind;  // grid | case | atom
  std::uint64_t n = 0;
  bool has_value = false;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct AtomSample {
  std::uint64_t n_max = 0;
  double ratio = 0.0;
};

struct ThetaReport {
  double p = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<ThetaRow> rows;
  std::string note;
};

/// Empirical bracket C_1 n^{1/p-1}/log(n+1) <= Theta(n) <= C_2 n^{1/p-1}.
/// Each sweep case requires Theta(n*+1) >= 1/(l_{n*} ||f||_{H_p}); C_1 is
/// the largest constant keeping every such value above the lower curve, C_2
/// the smallest (>= C_1, >= 1) covering case values and atom ratios.
ThetaReport theta_bracket(double p, const std::vector<SweepRow>& cases, const std::vector<AtomSample>& atoms);

}  // namespace vlab
