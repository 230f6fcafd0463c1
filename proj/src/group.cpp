#include "vlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vlab/error.hpp"

namespace vlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RadixTooSmall: return "RadixTooSmall";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::ResolutionMismatch: return "ResolutionMismatch";
    case ErrorKind::EmptyMartingale: return "EmptyMartingale";
    case ErrorKind::NotAdapted: return "NotAdapted";
    case ErrorKind::ZeroTotalWeight: return "ZeroTotalWeight";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DepthTooSmall: return "DepthTooSmall";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

int RadixSequence::max_radix() const noexcept {
  return radices_.empty() ? 1 : *std::max_element(radices_.begin(), radices_.end());
}

int RadixSequence::radix_sum() const noexcept {
  return std::accumulate(radices_.begin(), radices_.end(), 0);
}

RadixSequence RadixSequence::truncated(int depth) const {
  return build_radix(radices_, depth, kDefaultCapacity);
}

std::string RadixSequence::to_csv() const {
  std::string out;
  for (std::size_t k = 0; k < radices_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(radices_[k]);
  }
  return out;
}

RadixSequence build_radix(std::span<const int> radices, int depth, std::uint64_t capacity) {
  if (depth < 0 || static_cast<std::size_t>(depth) > radices.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "depth " + std::to_string(depth) + " exceeds " +
                    std::to_string(radices.size()) + " supplied radices");
  }
  RadixSequence rs;
  rs.radices_.assign(radices.begin(), radices.begin() + depth);
  rs.scales_.assign(1, 1);
  for (int k = 0; k < depth; ++k) {
    const int m = rs.radices_[static_cast<std::size_t>(k)];
    if (m < 2) {
      throw Error(ErrorKind::RadixTooSmall,
                  "m_" + std::to_string(k) + " = " + std::to_string(m) + " < 2");
    }
    const std::uint64_t prev = rs.scales_.back();
    if (prev > capacity / static_cast<std::uint64_t>(m)) {
      throw Error(ErrorKind::CapacityExceeded,
                  "M_" + std::to_string(k + 1) + " exceeds capacity " + std::to_string(capacity));
    }
    rs.scales_.push_back(prev * static_cast<std::uint64_t>(m));
  }
  return rs;
}

std::vector<int> parse_radix_list(std::string_view csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view tok = csv.substr(pos, comma - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (tok.empty()) {
      throw Error(ErrorKind::ParseError, "empty entry in radix list '" + std::string(csv) + "'");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw Error(ErrorKind::ParseError, "bad radix '" + std::string(tok) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::vector<int> repeat_pattern(std::span<const int> pattern, int depth) {
  if (pattern.empty()) throw Error(ErrorKind::ParseError, "empty radix pattern");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(depth, 0)));
  for (int k = 0; k < depth; ++k) out.push_back(pattern[static_cast<std::size_t>(k) % pattern.size()]);
  return out;
}

MixedRadixIndex decompose(std::uint64_t n, const RadixSequence& rs) {
  if (n >= rs.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                std::to_string(n) + " >= M_N = " + std::to_string(rs.size()));
  }
  MixedRadixIndex idx;
  idx.value = n;
  idx.digits.resize(static_cast<std::size_t>(rs.depth()));
  std::uint64_t rest = n;
  for (int k = 0; k < rs.depth(); ++k) {
    const auto m = static_cast<std::uint64_t>(rs.radix(k));
    idx.digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % m);
    rest /= m;
    if (idx.digits[static_cast<std::size_t>(k)] != 0) idx.order = k;
  }
  return idx;
}

std::uint64_t compose(std::span<const int> digits, const RadixSequence& rs) {
  if (digits.size() != static_cast<std::size_t>(rs.depth())) {
    throw Error(ErrorKind::DigitOutOfRange, "expected " + std::to_string(rs.depth()) + " digits");
  }
  std::uint64_t n = 0;
  for (int k = 0; k < rs.depth(); ++k) {
    const int d = digits[static_cast<std::size_t>(k)];
    if (d < 0 || d >= rs.radix(k)) {
      throw Error(ErrorKind::DigitOutOfRange,
                  "digit " + std::to_string(d) + " at position " + std::to_string(k));
    }
    n += static_cast<std::uint64_t>(d) * rs.scale(k);
  }
  return n;
}

std::uint64_t Cylinder::anchor_index(const RadixSequence& rs) const {
  std::uint64_t i = 0;
  for (int k = 0; k < rank; ++k) i += static_cast<std::uint64_t>(anchor[static_cast<std::size_t>(k)]) * rs.scale(k);
  return i;
}

bool Cylinder::contains(std::uint64_t i, const RadixSequence& rs) const {
  return i % rs.scale(rank) == anchor_index(rs);
}

Cylinder cylinder_of(const GroupPoint& point, int rank, const RadixSequence& rs) {
  if (rank < 0 || rank > rs.depth()) {
    throw Error(ErrorKind::RankOutOfRange,
                "rank " + std::to_string(rank) + " outside [0, " + std::to_string(rs.depth()) + "]");
  }
  if (point.digits.size() < static_cast<std::size_t>(rank)) {
    throw Error(ErrorKind::DigitOutOfRange, "point has fewer digits than the rank");
  }
  for (int k = 0; k < rank; ++k) {
    const int d = point.digits[static_cast<std::size_t>(k)];
    if (d < 0 || d >= rs.radix(k)) throw Error(ErrorKind::DigitOutOfRange, "point digit out of range");
  }
  Cylinder c;
  c.rank = rank;
  c.anchor.assign(point.digits.begin(), point.digits.begin() + rank);
  c.inverse_measure = rs.scale(rank);
  return c;
}

std::vector<GroupPoint> enumerate_points(const RadixSequence& rs) {
  std::vector<GroupPoint> pts;
  pts.reserve(rs.size());
  std::vector<int> digits(static_cast<std::size_t>(rs.depth()), 0);
  for (std::uint64_t i = 0; i < rs.size(); ++i) {
    pts.push_back(GroupPoint{digits});
    // Odometer increment, digit 0 fastest.
    for (int k = 0; k < rs.depth(); ++k) {
      auto& d = digits[static_cast<std::size_t>(k)];
      if (++d < rs.radix(k)) break;
      d = 0;
    }
  }
  return pts;
}

cplx root_of_unity(int r, int m) {
  r %= m;
  if (r < 0) r += m;
  if (r == 0) return {1.0, 0.0};
  if ((4 * r) % m == 0) {
    switch ((4 * r) / m) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * r / m);
}

}  // namespace vlab
