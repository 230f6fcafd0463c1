#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vlab/group.hpp"

namespace vlab {

/// Complex-valued function constant on each rank-N cylinder of G_m.
/// Value i belongs to the cylinder whose anchor is decompose(i).
class StepFunction {
 public:
  StepFunction() = default;
  /// Zero function.
  explicit StepFunction(RadixSequence rs);
  /// Throws NonFiniteValue on NaN/Inf and ResolutionMismatch on a length mismatch.
  StepFunction(RadixSequence rs, std::vector<cplx> values);

  static StepFunction constant(const RadixSequence& rs, cplx c);

  const RadixSequence& radix() const noexcept { return rs_; }
  int resolution() const noexcept { return rs_.depth(); }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> mutable_values() noexcept { return values_; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  bool is_finite() const noexcept;

 private:
  RadixSequence rs_;
  std::vector<cplx> values_;
};

void require_same_grid(const StepFunction& a, const StepFunction& b);

StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction scale(const StepFunction& f, cplx c);
StepFunction abs(const StepFunction& f);
StepFunction sup_pointwise(std::span<const StepFunction> fs);
double max_abs_diff(const StepFunction& f, const StepFunction& g);
double sup_norm(const StepFunction& f);

/// (integral |f|^p dmu)^{1/p}. Throws InvalidExponent for p <= 0.
double lp_quasinorm(const StepFunction& f, double p);

/// sup_{lambda>0} lambda * mu{|f| > lambda}^{1/p}, evaluated exactly as the
/// max over the distinct levels v of |f| of v * mu{|f| >= v}^{1/p}.
double weak_lp_quasinorm(const StepFunction& f, double p);

/// mu{|f| >= threshold}; exact count / M_N.
double level_set_measure(const StepFunction& f, double threshold);

double integral_re(const StepFunction& f);
cplx integral(const StepFunction& f);

/// Levels f_0..f_N, each stored at full resolution N, f_n constant on rank-n
/// cylinders.
class MartingaleSeq {
 public:
  MartingaleSeq() = default;
  /// Validates adaptedness to relative tolerance `tol`; throws NotAdapted.
  static MartingaleSeq from_levels(std::vector<StepFunction> levels, double tol = 1e-12);

  std::size_t level_count() const noexcept { return levels_.size(); }
  const StepFunction& level(std::size_t n) const { return levels_.at(n); }
  const std::vector<StepFunction>& levels() const noexcept { return levels_; }
  bool empty() const noexcept { return levels_.empty(); }

  /// Largest relative violation of the averaging identity between
  /// consecutive levels.
  double adaptedness_defect() const;

 private:
  friend MartingaleSeq to_martingale(const StepFunction& f);
  std::vector<StepFunction> levels_;
};

/// Conditional averages of f over rank-n cylinders for n = 0..N.
MartingaleSeq to_martingale(const StepFunction& f);

/// Pointwise max over levels of |f_n|. Throws EmptyMartingale.
StepFunction maximal_function(const MartingaleSeq& mart);

/// f*(x) = sup_n |mu(I_n(x))^{-1} integral_{I_n(x)} f|, computed by summing
/// over cylinder members directly. Kept to cross-check the sup-of-levels form.
StepFunction maximal_function_by_averages(const StepFunction& f);

double hardy_quasinorm(const MartingaleSeq& mart, double p);
/// Converts through to_martingale first.
double hardy_quasinorm(const StepFunction& f, double p);

// File format: header `radices=<csv>;N=<int>[;kind=coeffs]` then M_N lines
// `re,im`, each number with 17 significant digits.
struct GridFile {
  RadixSequence radix;
  bool coeffs = false;
  std::vector<cplx> values;
};

void write_grid(std::ostream& os, const GridFile& grid);
GridFile read_grid(std::istream& is);

void write_step_function(std::ostream& os, const StepFunction& f);
StepFunction read_step_function(std::istream& is);

std::string format_double(double x);

}  // namespace vlab
