#pragma once

// Weighted maximal operators sup_n |T_n f| / phi(n+1) with T_n either the
// partial sums S_n or the logarithmic means L_n, p-atoms, and empirical
// H_p -> L_p ratios.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "vlab/group.hpp"
#include "vlab/step_function.hpp"

namespace vlab {

/// Non-decreasing phi: N_+ -> [1, inf).
class WeightFunction {
 public:
  enum class Family { power, log, table };

  /// phi(n) = n^alpha, alpha >= 0.
  static WeightFunction power(double alpha);
  /// phi(n) = max(1, ln(n+1)).
  static WeightFunction log();
  /// phi(n) = values[n-1] for n <= K, then values.back().
  static WeightFunction table(std::vector<double> values);
  /// "power:<alpha>", "power" (alpha = 1/p - 1), "log", "custom:<file>".
  static WeightFunction parse(const std::string& spec, double p);

  double operator()(std::uint64_t n) const;
  Family family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  std::string label() const;

 private:
  Family family_ = Family::log;
  double alpha_ = 0.0;
  std::vector<double> table_;
};

enum class MeansKind { partial_sum, log_mean };

std::string_view to_string(MeansKind kind);

/// Pointwise sup over 1 <= n <= n_max (log means start at n = 2) of
/// |T_n f| / phi(n+1). For partial sums n_max may exceed M_N, where
/// S_n f = f; log means need n_max <= M_N.
StepFunction weighted_maximal(const StepFunction& f, MeansKind kind, const WeightFunction& weight,
                              std::uint64_t n_max);

/// Bound on the part of the log-mean sup beyond n_max:
/// |L_n f| <= sup_k |S_k f| for every n, and phi only grows.
struct TailBound {
  double sup = 0.0;  // max_x sup_k |S_k f(x)| / phi(n_max + 1)
  double lp = 0.0;   // L_p quasi-norm of the pointwise bound
};
TailBound log_mean_tail_bound(const StepFunction& f, const WeightFunction& weight, std::uint64_t n_max,
                              double p);

struct DominationResult {
  bool holds = true;
  /// max over n, x of |L_n f|/(n+1)^a - sup_{k<=n} |S_k f|/(k+1)^a, clipped at 0.
  double max_slack = 0.0;
  std::uint64_t worst_n = 0;
};

/// Checks |L_n f|/(n+1)^{1/p-1} <= sup_{1<=k<=n} |S_k f|/(k+1)^{1/p-1}
/// pointwise for 2 <= n <= n_max. Throws InvalidExponent unless 0 < p < 1.
DominationResult domination_check(const StepFunction& f, double p, std::uint64_t n_max,
                                  double tol = 1e-12);

struct Atom {
  StepFunction values;
  Cylinder support;
  double p = 1.0;
};

/// Random p-atom on a random rank-`rank` cylinder: uniform values on the
/// rank-N cells inside it, mean removed, rescaled to sup = mu(I)^{-1/p}.
/// Needs 0 <= rank < N (a rank-N cylinder carries no mean-zero function).
Atom make_atom(std::mt19937_64& rng, const RadixSequence& rs, int rank, double p);

/// Support, mean-zero and size conditions, with mean tolerance relative to
/// the sup norm.
bool atom_is_valid(const Atom& atom, double tol = 1e-12);

/// ||sup_n |T_n f| / phi(n+1)||_p / ||f||_{H_p}. Throws DegenerateInput when
/// the Hardy norm vanishes.
double boundedness_ratio(const StepFunction& f, double p, const WeightFunction& weight,
                         std::uint64_t n_max, MeansKind kind = MeansKind::log_mean);

enum class Condition6 { satisfied, violated, unknown };

std::string_view to_string(Condition6 verdict);

/// Whether limsup n^{1/p-1} / (log n * phi(n)) = inf, decided symbolically for
/// the built-in families.
Condition6 condition6_advisory(const WeightFunction& weight, double p);

}  // namespace vlab
