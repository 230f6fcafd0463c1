#include "vlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vlab/error.hpp"
#include "vlab/means.hpp"
#include "vlab/numeric.hpp"
#include "vlab/transform.hpp"

namespace vlab {

namespace {

// Relative slack when comparing a computed modulus against a level it equals
// analytically.
constexpr double kLevelSlack = 1e-12;

}  // namespace

void CheckReport::record(double err, double tol, const std::string& where) {
  max_error = std::max(max_error, err);
  if (err > tol) {
    ok = false;
    if (violations.size() < 16) violations.push_back(where + ": error " + format_double(err));
  }
}

CounterexampleCase build_case(int nk, const RadixSequence& rs) {
  if (nk < 1) throw Error(ErrorKind::IndexOutOfRange, "n_k must be positive");
  const int depth = 2 * nk + 1;
  if (rs.depth() < depth) {
    throw Error(ErrorKind::DepthTooSmall, "n_k = " + std::to_string(nk) + " needs depth " +
                                              std::to_string(depth) + ", have " + std::to_string(rs.depth()));
  }
  CounterexampleCase c;
  c.nk = nk;
  c.radix = rs.truncated(depth);
  c.m_low = c.radix.scale(2 * nk);
  c.m_high = c.radix.scale(2 * nk + 1);
  c.n_star = c.m_low + 2;
  c.f = add(dirichlet_closed(2 * nk + 1, c.radix), scale(dirichlet_closed(2 * nk, c.radix), -1.0));
  return c;
}

CheckReport verify_coefficients(const CounterexampleCase& c, double tol) {
  const CoefficientVector coeffs = forward_fast(c.f);
  CheckReport report;
  for (std::uint64_t i = 0; i < coeffs.size(); ++i) {
    const double expected = (i >= c.m_low && i < c.m_high) ? 1.0 : 0.0;
    report.record(std::abs(coeffs.coeffs[i] - expected), tol, "coefficient " + std::to_string(i));
  }
  return report;
}

CheckReport verify_partial_sums(const CounterexampleCase& c, double tol) {
  const RadixSequence& rs = c.radix;
  const std::size_t len = rs.size();
  const StepFunction d_low = dirichlet_closed(2 * c.nk, rs);
  CheckReport report;
  // S_0 f := 0.
  report.record(sup_norm(partial_sum(c.f, 0)), tol, "S_0");

  std::vector<cplx> dirichlet(len);  // D_i, grown one character at a time
  std::vector<cplx> chr(len);
  for_each_partial_sum(forward_fast(c.f), rs.size(), [&](std::uint64_t i, std::span<const cplx> s) {
    character_values_into(i - 1, rs, chr);
    for (std::size_t x = 0; x < len; ++x) dirichlet[x] += chr[x];
    double err = 0.0;
    if (i <= c.m_low) {
      for (std::size_t x = 0; x < len; ++x) err = std::max(err, std::abs(s[x]));
    } else if (i < c.m_high) {
      for (std::size_t x = 0; x < len; ++x) err = std::max(err, std::abs(s[x] - (dirichlet[x] - d_low[x])));
    } else {
      for (std::size_t x = 0; x < len; ++x) err = std::max(err, std::abs(s[x] - c.f[x]));
    }
    report.record(err, tol, "S_" + std::to_string(i));
  });
  return report;
}

double closed_hardy_norm(std::uint64_t m_low, std::uint64_t m_high, double p) {
  const auto lo = static_cast<double>(m_low);
  const auto hi = static_cast<double>(m_high);
  const double pth = std::pow(hi - lo, p) / hi + std::pow(lo, p) * (1.0 / lo - 1.0 / hi);
  return std::pow(pth, 1.0 / p);
}

HardyBound verify_hardy_bound(const CounterexampleCase& c, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidExponent, "Hardy bound check needs 0 < p < 1");
  HardyBound hb;
  const MartingaleSeq mart = to_martingale(c.f);
  const StepFunction star = maximal_function(mart);
  hb.maximal_equals_abs = max_abs_diff(star, abs(c.f)) == 0.0;
  hb.norm = lp_quasinorm(star, p);
  hb.closed = closed_hardy_norm(c.m_low, c.m_high, p);
  hb.bound = std::pow(2.0, 1.0 / p) * std::pow(static_cast<double>(c.m_low), 1.0 - 1.0 / p);
  hb.relative_error = std::abs(hb.norm - hb.closed) / hb.closed;
  hb.ok = hb.maximal_equals_abs && hb.relative_error <= 1e-12 && hb.norm <= hb.bound;
  return hb;
}

LMeanIdentity l_mean_identity(const CounterexampleCase& c, double tol) {
  LMeanIdentity out;
  const StepFunction mean = log_mean(c.f, c.n_star);
  const double l = harmonic_l(c.n_star);
  out.predicted = 1.0 / l;
  const StepFunction expected = scale(character_values(c.m_low, c.radix), 1.0 / l);
  out.max_error = max_abs_diff(mean, expected);

  out.min_modulus = std::numeric_limits<double>::infinity();
  std::vector<double> moduli;
  moduli.reserve(mean.size());
  for (const auto& z : mean.values()) {
    const double m = std::abs(z);
    out.min_modulus = std::min(out.min_modulus, m);
    out.max_modulus = std::max(out.max_modulus, m);
    moduli.push_back(m);
  }
  const auto count = static_cast<double>(moduli.size());
  const double avg = pairwise_sum(std::span<const double>(moduli)) / count;
  for (auto& m : moduli) m = (m - avg) * (m - avg);
  out.modulus_variance = pairwise_sum(std::span<const double>(moduli)) / count;
  out.level_set_measure = level_set_measure(mean, out.predicted * (1.0 - kLevelSlack));
  out.ok = out.max_error <= tol && std::abs(out.max_modulus - out.predicted) <= tol &&
           std::abs(out.min_modulus - out.predicted) <= tol && out.level_set_measure == 1.0;
  return out;
}

SweepReport divergence_sweep(const std::vector<int>& nk_list, double p, const WeightFunction& weight,
                             const std::vector<int>& pattern) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidExponent, "sweep needs 0 < p < 1");
  SweepReport report;
  report.condition6 = condition6_advisory(weight, p);
  report.weight_label = weight.label();
  std::vector<RadixSequence> grids;
  for (int nk : nk_list) {
    if (nk < 1) throw Error(ErrorKind::IndexOutOfRange, "n_k must be positive");
    grids.push_back(build_radix(repeat_pattern(pattern, 2 * nk + 1)));
  }
  report.rows.resize(nk_list.size());
  const auto cases = static_cast<std::int64_t>(nk_list.size());
#pragma omp parallel for schedule(dynamic, 1) if (cases > 1)
  for (std::int64_t idx = 0; idx < cases; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const CounterexampleCase c = build_case(nk_list[u], grids[u]);
    SweepRow& row = report.rows[u];
    row.k = static_cast<int>(idx) + 1;
    row.nk = c.nk;
    row.m_low = c.m_low;
    row.n_star = c.n_star;
    row.p = p;
    row.phi = weight(c.n_star + 1);
    row.l_nstar = harmonic_l(c.n_star);
    const StepFunction mean = log_mean(c.f, c.n_star);
    row.l_modulus = sup_norm(mean);
    row.hardy_norm = hardy_quasinorm(c.f, p);
    const double level = 1.0 / (row.l_nstar * row.phi);
    row.level_measure = level_set_measure(mean, level * (1.0 - kLevelSlack));
    row.ratio = level * std::pow(row.level_measure, 1.0 / p) / row.hardy_norm;
    const auto lo = static_cast<double>(c.m_low);
    row.comparator = std::pow(lo, 1.0 / p - 1.0) / (std::log(lo + 2.0) * row.phi);
  }
  if (report.condition6 == Condition6::satisfied) {
    report.monotone_checked = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      if (!(report.rows[i].ratio > report.rows[i - 1].ratio)) report.monotone_ok = false;
    }
  }
  return report;
}

ThetaReport theta_bracket(double p, const std::vector<SweepRow>& cases, const std::vector<AtomSample>& atoms) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidExponent, "bracket needs 0 < p < 1");
  const double alpha = 1.0 / p - 1.0;
  ThetaReport out;
  out.p = p;
  auto lower_shape = [&](double n) { return std::pow(n, alpha) / std::log(n + 1.0); };
  auto upper_shape = [&](double n) { return std::pow(n, alpha); };

  struct Witness {
    std::uint64_t n;
    double value;
  };
  std::vector<Witness> needs;
  for (const auto& row : cases) {
    needs.push_back({row.n_star + 1, 1.0 / (row.l_nstar * row.hardy_norm)});
  }
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = 1.0;
  for (const auto& w : needs) {
    const auto n = static_cast<double>(w.n);
    c1 = std::min(c1, w.value / lower_shape(n));
    c2 = std::max(c2, w.value / upper_shape(n));
  }
  if (needs.empty()) c1 = 0.0;
  for (const auto& a : atoms) c2 = std::max(c2, a.ratio);
  c2 = std::max(c2, c1);
  out.c1 = c1;
  out.c2 = c2;

  std::uint64_t top = 8;
  for (const auto& w : needs) top = std::max(top, w.n);
  for (std::uint64_t n = 2; n <= top; n *= 2) {
    const auto x = static_cast<double>(n);
    out.rows.push_back({"grid", n, false, 0.0, c1 * lower_shape(x), c2 * upper_shape(x)});
  }
  for (const auto& w : needs) {
    const auto x = static_cast<double>(w.n);
    out.rows.push_back({"case", w.n, true, w.value, c1 * lower_shape(x), c2 * upper_shape(x)});
  }
  for (const auto& a : atoms) {
    const auto x = static_cast<double>(std::max<std::uint64_t>(a.n_max, 2));
    out.rows.push_back({"atom", a.n_max, true, a.ratio, c1 * lower_shape(x), c2 * upper_shape(x)});
  }
  out.note =
      "exploratory: constants fitted to the measured values of this run only; "
      "the bracket is an empirical envelope, not an optimality statement";
  return out;
}

}  // namespace vlab
