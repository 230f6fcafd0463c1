#include "vlab/step_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "vlab/error.hpp"
#include "vlab/numeric.hpp"

namespace vlab {

namespace {

void require_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidExponent, "p must be positive, got " + format_double(p));
  }
}

double mean_of(std::span<const double> xs) {
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace

StepFunction::StepFunction(RadixSequence rs) : rs_(std::move(rs)), values_(rs_.size()) {}

StepFunction::StepFunction(RadixSequence rs, std::vector<cplx> values)
    : rs_(std::move(rs)), values_(std::move(values)) {
  if (values_.size() != rs_.size()) {
    throw Error(ErrorKind::ResolutionMismatch,
                "expected " + std::to_string(rs_.size()) + " values, got " +
                    std::to_string(values_.size()));
  }
  if (!is_finite()) throw Error(ErrorKind::NonFiniteValue, "step function contains NaN or Inf");
}

StepFunction StepFunction::constant(const RadixSequence& rs, cplx c) {
  return StepFunction(rs, std::vector<cplx>(rs.size(), c));
}

bool StepFunction::is_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

void require_same_grid(const StepFunction& a, const StepFunction& b) {
  if (!(a.radix() == b.radix())) {
    throw Error(ErrorKind::ResolutionMismatch,
                "grids differ: [" + a.radix().to_csv() + "] vs [" + b.radix().to_csv() + "]");
  }
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
  require_same_grid(f, g);
  StepFunction out(f.radix());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] + g[i];
  return out;
}

StepFunction scale(const StepFunction& f, cplx c) {
  StepFunction out(f.radix());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = c * f[i];
  return out;
}

StepFunction abs(const StepFunction& f) {
  StepFunction out(f.radix());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

StepFunction sup_pointwise(std::span<const StepFunction> fs) {
  if (fs.empty()) throw Error(ErrorKind::EmptyMartingale, "sup over an empty family");
  StepFunction out(fs.front().radix());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fs.front()[i].real();
  for (const auto& g : fs) {
    require_same_grid(out, g);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i].real(), g[i].real());
  }
  return out;
}

double max_abs_diff(const StepFunction& f, const StepFunction& g) {
  require_same_grid(f, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f[i] - g[i]));
  return worst;
}

double sup_norm(const StepFunction& f) {
  double worst = 0.0;
  for (const auto& z : f.values()) worst = std::max(worst, std::abs(z));
  return worst;
}

double lp_quasinorm(const StepFunction& f, double p) {
  require_exponent(p);
  std::vector<double> powers(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) powers[i] = std::pow(std::abs(f[i]), p);
  return std::pow(mean_of(powers), 1.0 / p);
}

double weak_lp_quasinorm(const StepFunction& f, double p) {
  require_exponent(p);
  std::vector<double> mags(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double total = static_cast<double>(mags.size());
  double best = 0.0;
  // After sorting descending, the block ending at position j holds every
  // value >= mags[j]; evaluate only at the last copy of each distinct level.
  for (std::size_t j = 0; j < mags.size(); ++j) {
    if (mags[j] <= 0.0) break;
    if (j + 1 < mags.size() && mags[j + 1] == mags[j]) continue;
    const double measure = static_cast<double>(j + 1) / total;
    best = std::max(best, mags[j] * std::pow(measure, 1.0 / p));
  }
  return best;
}

double level_set_measure(const StepFunction& f, double threshold) {
  std::size_t count = 0;
  for (const auto& z : f.values()) {
    if (std::abs(z) >= threshold) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(f.size());
}

cplx integral(const StepFunction& f) {
  return pairwise_sum(f.values()) / static_cast<double>(f.size());
}

double integral_re(const StepFunction& f) { return integral(f).real(); }

MartingaleSeq to_martingale(const StepFunction& f) {
  const RadixSequence& rs = f.radix();
  const int depth = rs.depth();
  // coarse[n] has M_n entries: the average of f over each rank-n cylinder.
  std::vector<std::vector<cplx>> coarse(static_cast<std::size_t>(depth) + 1);
  coarse[static_cast<std::size_t>(depth)].assign(f.values().begin(), f.values().end());
  for (int n = depth - 1; n >= 0; --n) {
    const auto mn = rs.scale(n);
    const int children = rs.radix(n);
    const auto& fine = coarse[static_cast<std::size_t>(n) + 1];
    auto& out = coarse[static_cast<std::size_t>(n)];
    out.assign(mn, cplx{});
    for (std::uint64_t s = 0; s < mn; ++s) {
      cplx acc{};
      for (int t = 0; t < children; ++t) acc += fine[s + static_cast<std::uint64_t>(t) * mn];
      out[s] = acc / static_cast<double>(children);
    }
  }
  MartingaleSeq mart;
  mart.levels_.reserve(coarse.size());
  for (int n = 0; n <= depth; ++n) {
    const auto mn = rs.scale(n);
    const auto& c = coarse[static_cast<std::size_t>(n)];
    StepFunction level(rs);
    for (std::size_t i = 0; i < level.size(); ++i) level[i] = c[i % mn];
    mart.levels_.push_back(std::move(level));
  }
  return mart;
}

double MartingaleSeq::adaptedness_defect() const {
  if (levels_.empty()) return 0.0;
  const RadixSequence& rs = levels_.front().radix();
  double scale_ref = 0.0;
  for (const auto& lv : levels_) scale_ref = std::max(scale_ref, sup_norm(lv));
  if (scale_ref == 0.0) scale_ref = 1.0;
  double worst = 0.0;
  for (std::size_t n = 0; n + 1 < levels_.size(); ++n) {
    const auto mn = rs.scale(static_cast<int>(n));
    const int children = rs.radix(static_cast<int>(n));
    const auto& fine = levels_[n + 1];
    const auto& coarse = levels_[n];
    for (std::size_t i = 0; i < fine.size(); ++i) {
      // Children of the rank-n cylinder holding i differ from i only in digit n.
      const std::uint64_t base = i % mn + (i / rs.scale(static_cast<int>(n) + 1)) * rs.scale(static_cast<int>(n) + 1);
      cplx acc{};
      for (int t = 0; t < children; ++t) acc += fine[base + static_cast<std::uint64_t>(t) * mn];
      acc /= static_cast<double>(children);
      worst = std::max(worst, std::abs(acc - coarse[i]) / scale_ref);
    }
  }
  return worst;
}

MartingaleSeq MartingaleSeq::from_levels(std::vector<StepFunction> levels, double tol) {
  MartingaleSeq mart;
  if (!levels.empty()) {
    for (const auto& lv : levels) require_same_grid(levels.front(), lv);
    if (levels.size() != static_cast<std::size_t>(levels.front().resolution()) + 1) {
      throw Error(ErrorKind::NotAdapted, "expected N+1 levels");
    }
  }
  mart.levels_ = std::move(levels);
  // Each level must also be constant on its own rank; checking the averaging
  // identity between neighbours covers both.
  const double defect = mart.adaptedness_defect();
  if (defect > tol) {
    throw Error(ErrorKind::NotAdapted, "averaging identity violated by " + format_double(defect));
  }
  for (std::size_t n = 0; n < mart.levels_.size(); ++n) {
    const auto& lv = mart.levels_[n];
    const auto mn = lv.radix().scale(static_cast<int>(n));
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (std::abs(lv[i] - lv[i % mn]) > tol * std::max(1.0, std::abs(lv[i % mn]))) {
        throw Error(ErrorKind::NotAdapted, "level " + std::to_string(n) + " is not rank-measurable");
      }
    }
  }
  return mart;
}

StepFunction maximal_function(const MartingaleSeq& mart) {
  if (mart.empty()) throw Error(ErrorKind::EmptyMartingale, "martingale has no levels");
  StepFunction out(mart.level(0).radix());
  for (const auto& lv : mart.levels()) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::max(out[i].real(), std::abs(lv[i]));
    }
  }
  return out;
}

StepFunction maximal_function_by_averages(const StepFunction& f) {
  const RadixSequence& rs = f.radix();
  StepFunction out(rs);
  for (int n = 0; n <= rs.depth(); ++n) {
    const auto mn = rs.scale(n);
    std::vector<cplx> sums(mn);
    for (std::size_t i = 0; i < f.size(); ++i) sums[i % mn] += f[i];
    // |I_n(x)|^{-1} integral over I_n(x) = M_n * (1/M_N) * sum of members.
    const double factor = static_cast<double>(mn) / static_cast<double>(rs.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::max(out[i].real(), std::abs(sums[i % mn] * factor));
    }
  }
  return out;
}

double hardy_quasinorm(const MartingaleSeq& mart, double p) {
  require_exponent(p);
  return lp_quasinorm(maximal_function(mart), p);
}

double hardy_quasinorm(const StepFunction& f, double p) {
  require_exponent(p);
  return hardy_quasinorm(to_martingale(f), p);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_grid(std::ostream& os, const GridFile& grid) {
  os << "radices=" << grid.radix.to_csv() << ";N=" << grid.radix.depth();
  if (grid.coeffs) os << ";kind=coeffs";
  os << '\n';
  for (const auto& z : grid.values) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

namespace {

double parse_double(std::string_view tok) {
  std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
  return v;
}

}  // namespace

GridFile read_grid(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorKind::ParseError, "missing header line");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::vector<int> radices;
  int depth = -1;
  bool have_radices = false;
  GridFile grid;
  std::size_t pos = 0;
  while (pos <= header.size()) {
    std::size_t semi = header.find(';', pos);
    if (semi == std::string::npos) semi = header.size();
    const std::string field = header.substr(pos, semi - pos);
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "header field without '=': " + field);
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "radices") {
      radices = parse_radix_list(val);
      have_radices = true;
    } else if (key == "N") {
      depth = static_cast<int>(parse_double(val));
    } else if (key == "kind") {
      if (val == "coeffs") grid.coeffs = true;
      else if (val != "values") throw Error(ErrorKind::ParseError, "unknown kind '" + val + "'");
    } else {
      throw Error(ErrorKind::ParseError, "unknown header key '" + key + "'");
    }
    pos = semi + 1;
  }
  if (!have_radices || depth < 0) throw Error(ErrorKind::ParseError, "header needs radices= and N=");
  grid.radix = build_radix(radices, depth);
  grid.values.reserve(grid.radix.size());
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "value line without ',': " + line);
    grid.values.emplace_back(parse_double(std::string_view(line).substr(0, comma)),
                             parse_double(std::string_view(line).substr(comma + 1)));
  }
  if (grid.values.size() != grid.radix.size()) {
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(grid.radix.size()) +
                                           " value lines, got " + std::to_string(grid.values.size()));
  }
  return grid;
}

void write_step_function(std::ostream& os, const StepFunction& f) {
  write_grid(os, GridFile{f.radix(), false, {f.values().begin(), f.values().end()}});
}

StepFunction read_step_function(std::istream& is) {
  GridFile grid = read_grid(is);
  if (grid.coeffs) throw Error(ErrorKind::ParseError, "file holds coefficients, not a step function");
  return StepFunction(std::move(grid.radix), std::move(grid.values));
}

}  // namespace vlab
