#include "vlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vlab/error.hpp"
#include "vlab/means.hpp"
#include "vlab/numeric.hpp"
#include "vlab/parallel.hpp"
#include "vlab/transform.hpp"

namespace vlab {

WeightFunction WeightFunction::power(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidWeight, "power weight needs alpha >= 0");
  }
  WeightFunction w;
  w.family_ = Family::power;
  w.alpha_ = alpha;
  return w;
}

WeightFunction WeightFunction::log() {
  WeightFunction w;
  w.family_ = Family::log;
  return w;
}

WeightFunction WeightFunction::table(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidWeight, "empty weight table");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 1.0) {
      throw Error(ErrorKind::InvalidWeight, "phi(" + std::to_string(i + 1) + ") < 1");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw Error(ErrorKind::InvalidWeight, "phi decreases at n = " + std::to_string(i + 1));
    }
  }
  WeightFunction w;
  w.family_ = Family::table;
  w.table_ = std::move(values);
  return w;
}

WeightFunction WeightFunction::parse(const std::string& spec, double p) {
  if (spec == "log") return log();
  if (spec == "power") return power(1.0 / p - 1.0);
  if (spec.rfind("power:", 0) == 0) {
    const std::string arg = spec.substr(6);
    char* end = nullptr;
    const double alpha = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size()) {
      throw Error(ErrorKind::ConfigError, "bad power exponent '" + arg + "'");
    }
    return power(alpha);
  }
  if (spec.rfind("custom:", 0) == 0) {
    const std::string path = spec.substr(7);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open weight table " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      char* end = nullptr;
      const double v = std::strtod(line.c_str(), &end);
      if (end == line.c_str()) throw Error(ErrorKind::ParseError, "bad weight '" + line + "'");
      values.push_back(v);
    }
    return table(std::move(values));
  }
  throw Error(ErrorKind::ConfigError, "unknown weight '" + spec + "'");
}

double WeightFunction::operator()(std::uint64_t n) const {
  if (n < 1) throw Error(ErrorKind::InvalidWeight, "phi is defined on n >= 1");
  const auto x = static_cast<double>(n);
  switch (family_) {
    case Family::power: return std::pow(x, alpha_);
    case Family::log: return std::max(1.0, std::log(x + 1.0));
    case Family::table: return n <= table_.size() ? table_[n - 1] : table_.back();
  }
  return 1.0;
}

std::string WeightFunction::label() const {
  switch (family_) {
    case Family::power: return "power:" + format_double(alpha_);
    case Family::log: return "log";
    case Family::table: return "custom";
  }
  return "?";
}

std::string_view to_string(MeansKind kind) {
  return kind == MeansKind::partial_sum ? "partial_sum" : "log_mean";
}

std::string_view to_string(Condition6 verdict) {
  switch (verdict) {
    case Condition6::satisfied: return "satisfied";
    case Condition6::violated: return "violated";
    case Condition6::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

StepFunction partial_sum_maximal(const StepFunction& f, const WeightFunction& weight, std::uint64_t n_max) {
  const RadixSequence& rs = f.radix();
  const std::uint64_t mn = rs.size();
  StepFunction out(rs);
  auto vals = out.mutable_values();
  const std::uint64_t streamed = std::min(n_max, mn);
  for_each_partial_sum(forward_fast(f), streamed, [&](std::uint64_t n, std::span<const cplx> s) {
    const double inv = 1.0 / weight(n + 1);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::max(vals[i].real(), std::abs(s[i]) * inv);
  });
  if (n_max > mn) {
    // S_n f = f for n >= M_N and phi is non-decreasing, so n = M_N + 1 dominates the rest.
    const double inv = 1.0 / weight(mn + 2);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::max(vals[i].real(), std::abs(f[i]) * inv);
  }
  return out;
}

StepFunction log_mean_maximal(const StepFunction& f, const WeightFunction& weight, std::uint64_t n_max) {
  const RadixSequence& rs = f.radix();
  if (n_max > rs.size()) throw Error(ErrorKind::IndexOutOfRange, "log-mean n_max exceeds M_N");
  const CoefficientVector c = forward_fast(f);
  const std::vector<double> l = harmonic_table(n_max);
  const std::size_t len = rs.size();
  std::vector<double> best(len, 0.0);
  const auto last = static_cast<std::int64_t>(n_max);

  // Parallel over n; each thread keeps its own running maximum. max is exact,
  // so the merged result does not depend on the schedule.
#pragma omp parallel if (last >= 16)
  {
    std::vector<double> local(len, 0.0);
    std::vector<cplx> buf(len);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t sn = 2; sn <= last; ++sn) {
      const auto n = static_cast<std::uint64_t>(sn);
      std::fill(buf.begin(), buf.end(), cplx{});
      for (std::uint64_t j = 0; j + 2 <= n && j < len; ++j) buf[j] = c.coeffs[j] * (l[n - 1 - j] / l[n]);
      detail::tensor_dft(buf, rs, +1, nullptr);
      const double inv = 1.0 / weight(n + 1);
      for (std::size_t i = 0; i < len; ++i) local[i] = std::max(local[i], std::abs(buf[i]) * inv);
    }
#pragma omp critical(vlab_log_mean_merge)
    for (std::size_t i = 0; i < len; ++i) best[i] = std::max(best[i], local[i]);
  }
  StepFunction out(rs);
  for (std::size_t i = 0; i < len; ++i) out[i] = best[i];
  return out;
}

}  // namespace

StepFunction weighted_maximal(const StepFunction& f, MeansKind kind, const WeightFunction& weight,
                              std::uint64_t n_max) {
  return kind == MeansKind::partial_sum ? partial_sum_maximal(f, weight, n_max)
                                        : log_mean_maximal(f, weight, n_max);
}

TailBound log_mean_tail_bound(const StepFunction& f, const WeightFunction& weight, std::uint64_t n_max,
                              double p) {
  const RadixSequence& rs = f.radix();
  StepFunction pointwise(rs);
  for_each_partial_sum(forward_fast(f), rs.size(), [&](std::uint64_t, std::span<const cplx> s) {
    for (std::size_t i = 0; i < s.size(); ++i) pointwise[i] = std::max(pointwise[i].real(), std::abs(s[i]));
  });
  const double inv = 1.0 / weight(n_max + 1);
  for (std::size_t i = 0; i < pointwise.size(); ++i) pointwise[i] *= inv;
  return TailBound{sup_norm(pointwise), lp_quasinorm(pointwise, p)};
}

DominationResult domination_check(const StepFunction& f, double p, std::uint64_t n_max, double tol) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidExponent, "domination check needs 0 < p < 1");
  const RadixSequence& rs = f.radix();
  if (n_max > rs.size()) throw Error(ErrorKind::IndexOutOfRange, "n_max exceeds M_N");
  const double alpha = 1.0 / p - 1.0;
  const CoefficientVector c = forward_fast(f);
  const std::vector<double> l = harmonic_table(n_max);
  const std::size_t len = rs.size();
  std::vector<double> running(len, 0.0);  // sup_{k<=n} |S_k f| / (k+1)^alpha
  std::vector<cplx> buf(len);
  DominationResult result;
  for_each_partial_sum(c, n_max, [&](std::uint64_t n, std::span<const cplx> s) {
    const double wk = std::pow(static_cast<double>(n + 1), -alpha);
    for (std::size_t i = 0; i < len; ++i) running[i] = std::max(running[i], std::abs(s[i]) * wk);
    if (n < 2) return;
    std::fill(buf.begin(), buf.end(), cplx{});
    for (std::uint64_t j = 0; j + 2 <= n && j < len; ++j) buf[j] = c.coeffs[j] * (l[n - 1 - j] / l[n]);
    detail::tensor_dft(buf, rs, +1, nullptr);
    for (std::size_t i = 0; i < len; ++i) {
      const double slack = std::abs(buf[i]) * wk - running[i];
      if (slack > result.max_slack) {
        result.max_slack = slack;
        result.worst_n = n;
      }
    }
  });
  result.holds = result.max_slack <= tol;
  return result;
}

Atom make_atom(std::mt19937_64& rng, const RadixSequence& rs, int rank, double p) {
  if (rank < 0 || rank >= rs.depth()) {
    throw Error(ErrorKind::RankOutOfRange, "atom rank must lie in [0, N)");
  }
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidExponent, "atoms need 0 < p <= 1");
  GroupPoint anchor;
  anchor.digits.resize(static_cast<std::size_t>(rs.depth()));
  for (int k = 0; k < rs.depth(); ++k) {
    std::uniform_int_distribution<int> digit(0, rs.radix(k) - 1);
    anchor.digits[static_cast<std::size_t>(k)] = digit(rng);
  }
  Cylinder support = cylinder_of(anchor, rank, rs);
  const std::uint64_t mr = rs.scale(rank);
  const std::uint64_t a0 = support.anchor_index(rs);
  const std::size_t cells = rs.size() / mr;

  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> inside(cells);
  double peak = 0.0;
  while (peak == 0.0) {
    for (auto& v : inside) v = unif(rng);
    const double mean = pairwise_sum(std::span<const double>(inside)) / static_cast<double>(cells);
    peak = 0.0;
    for (auto& v : inside) {
      v -= mean;
      peak = std::max(peak, std::abs(v));
    }
  }
  const double target = std::pow(static_cast<double>(mr), 1.0 / p);
  StepFunction values(rs);
  for (std::size_t c = 0; c < cells; ++c) values[a0 + c * mr] = inside[c] * (target / peak);
  return Atom{std::move(values), std::move(support), p};
}

bool atom_is_valid(const Atom& atom, double tol) {
  const RadixSequence& rs = atom.values.radix();
  double peak = 0.0;
  for (std::size_t i = 0; i < atom.values.size(); ++i) {
    if (!atom.support.contains(i, rs) && atom.values[i] != cplx{}) return false;
    peak = std::max(peak, std::abs(atom.values[i]));
  }
  const double bound = std::pow(static_cast<double>(atom.support.inverse_measure), 1.0 / atom.p);
  if (peak > bound * (1.0 + tol)) return false;
  return std::abs(integral(atom.values)) <= tol * std::max(peak, 1.0);
}

double boundedness_ratio(const StepFunction& f, double p, const WeightFunction& weight, std::uint64_t n_max,
                         MeansKind kind) {
  const double hardy = hardy_quasinorm(f, p);
  if (!(hardy > 0.0)) throw Error(ErrorKind::DegenerateInput, "Hardy quasi-norm is zero");
  return lp_quasinorm(weighted_maximal(f, kind, weight, n_max), p) / hardy;
}

Condition6 condition6_advisory(const WeightFunction& weight, double p) {
  switch (weight.family()) {
    case WeightFunction::Family::power:
      // n^{1/p-1-alpha} / log n diverges iff alpha < 1/p - 1.
      return weight.alpha() < 1.0 / p - 1.0 ? Condition6::satisfied : Condition6::violated;
    case WeightFunction::Family::log:
      return p < 1.0 ? Condition6::satisfied : Condition6::violated;
    case WeightFunction::Family::table:
      return Condition6::unknown;
  }
  return Condition6::unknown;
}

}  // namespace vlab
