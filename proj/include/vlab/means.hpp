#pragma once

// Norlund means (1/Q_n) sum_k q_{n-k} S_k f and the logarithmic case
// q_k = 1/k, L_n f = (1/l_n) sum_{k<n} S_k f / (n - k).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vlab/step_function.hpp"
#include "vlab/transform.hpp"

namespace vlab {

/// l_n = sum_{j=1}^n 1/j. Throws IndexOutOfRange for n < 1.
double harmonic_l(std::uint64_t n);

/// l_0 = 0, l_1, ..., l_n by forward summation.
std::vector<double> harmonic_table(std::uint64_t n);

class WeightSequence {
 public:
  enum class Family { ones, log, custom };

  /// q_k = 1 for k >= 0 (q_0 = 1 included).
  static WeightSequence ones();
  /// q_k = 1/k for k >= 1; no q_0.
  static WeightSequence log();
  /// q_1..q_K from `q`; q_0 only when supplied.
  static WeightSequence custom(std::vector<double> q, std::optional<double> q0 = std::nullopt);
  /// One q per line, q_1 first.
  static WeightSequence from_file(const std::string& path);
  /// "ones", "log" or "custom:<file>".
  static WeightSequence parse(const std::string& spec);

  Family family() const noexcept { return family_; }
  double q(std::uint64_t k) const;
  const std::optional<double>& q0() const noexcept { return q0_; }
  /// Q_n = sum_{k=1}^n q_k.
  double total(std::uint64_t n) const;

 private:
  Family family_ = Family::ones;
  std::vector<double> table_;
  std::optional<double> q0_;
};

/// Streams S_1 f, ..., S_{n_max} f via S_{k+1} = S_k + f^(k) psi_k. The
/// callback sees n and the values of S_n f; the buffer is reused.
void for_each_partial_sum(const CoefficientVector& c, std::uint64_t n_max,
                          const std::function<void(std::uint64_t, std::span<const cplx>)>& visit);

std::vector<StepFunction> batch_partial_sums(const StepFunction& f, std::uint64_t n_max);

/// Direct route: weighted sum of the partial sums. The k = n term uses q_0
/// and is dropped when the weights define none.
StepFunction norlund_mean(const StepFunction& f, std::uint64_t n, const WeightSequence& weights);

/// Coefficient multipliers of L_n: entry j equals l_{n-1-j} / l_n for
/// j <= n-2 and 0 otherwise.
std::vector<double> log_mean_multipliers(std::uint64_t n, std::uint64_t length);

/// Multiplier route: one synthesis of the scaled coefficients. Requires
/// 2 <= n <= M_N unless `allow_degenerate` admits n = 1 (identically 0).
StepFunction log_mean(const CoefficientVector& c, std::uint64_t n, bool allow_degenerate = false);
StepFunction log_mean(const StepFunction& f, std::uint64_t n, bool allow_degenerate = false);

}  // namespace vlab
