#include "vlab/means.hpp"

#include <cmath>
#include <fstream>

#include "vlab/error.hpp"
#include "vlab/parallel.hpp"

namespace vlab {

double harmonic_l(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::IndexOutOfRange, "l_n needs n >= 1");
  double acc = 0.0;
  for (std::uint64_t j = 1; j <= n; ++j) acc += 1.0 / static_cast<double>(j);
  return acc;
}

std::vector<double> harmonic_table(std::uint64_t n) {
  std::vector<double> l(n + 1, 0.0);
  for (std::uint64_t j = 1; j <= n; ++j) l[j] = l[j - 1] + 1.0 / static_cast<double>(j);
  return l;
}

WeightSequence WeightSequence::ones() {
  WeightSequence w;
  w.family_ = Family::ones;
  w.q0_ = 1.0;
  return w;
}

WeightSequence WeightSequence::log() {
  WeightSequence w;
  w.family_ = Family::log;
  return w;
}

WeightSequence WeightSequence::custom(std::vector<double> q, std::optional<double> q0) {
  for (double v : q) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidWeight, "Norlund weights must be finite and >= 0");
  }
  if (q0 && (!(*q0 >= 0.0) || !std::isfinite(*q0))) throw Error(ErrorKind::InvalidWeight, "q_0 must be finite and >= 0");
  WeightSequence w;
  w.family_ = Family::custom;
  w.table_ = std::move(q);
  w.q0_ = q0;
  return w;
}

WeightSequence WeightSequence::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open weight file " + path);
  std::vector<double> q;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) throw Error(ErrorKind::ParseError, "bad weight '" + line + "'");
    q.push_back(v);
  }
  return custom(std::move(q));
}

WeightSequence WeightSequence::parse(const std::string& spec) {
  if (spec == "ones") return ones();
  if (spec == "log") return log();
  if (spec.rfind("custom:", 0) == 0) return from_file(spec.substr(7));
  throw Error(ErrorKind::ConfigError, "unknown weight family '" + spec + "'");
}

double WeightSequence::q(std::uint64_t k) const {
  if (k == 0) {
    if (!q0_) throw Error(ErrorKind::IndexOutOfRange, "weight sequence defines no q_0");
    return *q0_;
  }
  switch (family_) {
    case Family::ones: return 1.0;
    case Family::log: return 1.0 / static_cast<double>(k);
    case Family::custom:
      if (k > table_.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "custom weights stop at q_" + std::to_string(table_.size()));
      }
      return table_[k - 1];
  }
  return 0.0;
}

double WeightSequence::total(std::uint64_t n) const {
  double acc = 0.0;
  for (std::uint64_t k = 1; k <= n; ++k) acc += q(k);
  return acc;
}

void for_each_partial_sum(const CoefficientVector& c, std::uint64_t n_max,
                          const std::function<void(std::uint64_t, std::span<const cplx>)>& visit) {
  const RadixSequence& rs = c.radix;
  if (n_max > rs.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "n_max " + std::to_string(n_max) + " exceeds M_N");
  }
  const auto total = static_cast<std::int64_t>(rs.size());
  std::vector<cplx> sum(rs.size());
  std::vector<cplx> chr(rs.size());
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const cplx ck = c.coeffs[n - 1];
    if (ck != cplx{}) {
      character_values_into(n - 1, rs, chr);
#pragma omp parallel for schedule(static) if (total >= kParallelGrain)
      for (std::int64_t i = 0; i < total; ++i) sum[static_cast<std::size_t>(i)] += ck * chr[static_cast<std::size_t>(i)];
    }
    visit(n, sum);
  }
}

std::vector<StepFunction> batch_partial_sums(const StepFunction& f, std::uint64_t n_max) {
  std::vector<StepFunction> out;
  out.reserve(n_max);
  for_each_partial_sum(forward_fast(f), n_max, [&](std::uint64_t, std::span<const cplx> s) {
    out.emplace_back(f.radix(), std::vector<cplx>(s.begin(), s.end()));
  });
  return out;
}

StepFunction norlund_mean(const StepFunction& f, std::uint64_t n, const WeightSequence& weights) {
  if (n < 1 || n > f.radix().size()) {
    throw Error(ErrorKind::IndexOutOfRange, "Norlund mean needs 1 <= n <= M_N");
  }
  const double qn = weights.total(n);
  if (!(qn > 0.0)) throw Error(ErrorKind::ZeroTotalWeight, "Q_" + std::to_string(n) + " = 0");
  const bool with_q0 = weights.q0().has_value();
  StepFunction acc(f.radix());
  for_each_partial_sum(forward_fast(f), n, [&](std::uint64_t k, std::span<const cplx> s) {
    if (k == n && !with_q0) return;
    const double w = weights.q(n - k);
    if (w == 0.0) return;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * s[i];
  });
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] /= qn;
  return acc;
}

std::vector<double> log_mean_multipliers(std::uint64_t n, std::uint64_t length) {
  std::vector<double> mult(length, 0.0);
  if (n < 2) return mult;
  // Coefficient j enters every S_k with k > j, so it collects
  // sum_{k=j+1}^{n-1} 1/(n-k) = l_{n-1-j}.
  const std::vector<double> l = harmonic_table(n);
  const double ln = l[n];
  for (std::uint64_t j = 0; j + 2 <= n && j < length; ++j) mult[j] = l[n - 1 - j] / ln;
  return mult;
}

StepFunction log_mean(const CoefficientVector& c, std::uint64_t n, bool allow_degenerate) {
  if (n > c.radix.size()) throw Error(ErrorKind::IndexOutOfRange, "L_n needs n <= M_N");
  if (n == 0 || (n == 1 && !allow_degenerate)) {
    throw Error(ErrorKind::IndexOutOfRange, "L_n needs n >= 2 (n = 1 is identically zero)");
  }
  const std::vector<double> mult = log_mean_multipliers(n, c.size());
  CoefficientVector scaled = c;
  for (std::size_t j = 0; j < scaled.coeffs.size(); ++j) scaled.coeffs[j] *= mult[j];
  return inverse(scaled);
}

StepFunction log_mean(const StepFunction& f, std::uint64_t n, bool allow_degenerate) {
  return log_mean(forward_fast(f), n, allow_degenerate);
}

}  // namespace vlab
