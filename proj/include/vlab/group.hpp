#pragma once

// Mixed-radix arithmetic on a truncated bounded Vilenkin group G_m.
//
// A point x = (x_0, ..., x_{N-1}) with x_k in Z_{m_k} and an index
// n = sum n_j M_j share one linear layout: i = sum x_j M_j, digit 0 varying
// fastest. Every StepFunction, coefficient vector and kernel uses it.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vlab {

using cplx = std::complex<double>;

inline constexpr std::uint64_t kDefaultCapacity = std::uint64_t{1} << 31;

class RadixSequence {
 public:
  RadixSequence() = default;

  int depth() const noexcept { return static_cast<int>(radices_.size()); }
  int radix(int k) const { return radices_.at(static_cast<std::size_t>(k)); }
  const std::vector<int>& radices() const noexcept { return radices_; }

  /// M_k for 0 <= k <= depth().
  std::uint64_t scale(int k) const { return scales_.at(static_cast<std::size_t>(k)); }
  const std::vector<std::uint64_t>& scales() const noexcept { return scales_; }

  /// M_N, the number of rank-N cylinders.
  std::uint64_t size() const noexcept { return scales_.back(); }
  int max_radix() const noexcept;
  /// Sum of m_k over retained coordinates.
  int radix_sum() const noexcept;

  /// Same radices cut down to the first `depth` coordinates.
  RadixSequence truncated(int depth) const;

  std::string to_csv() const;

  bool operator==(const RadixSequence& other) const noexcept {
    return radices_ == other.radices_;
  }

  friend RadixSequence build_radix(std::span<const int> radices, int depth,
                                   std::uint64_t capacity);

 private:
  std::vector<int> radices_;
  std::vector<std::uint64_t> scales_{1};
};

/// Throws RadixTooSmall, CapacityExceeded, or IndexOutOfRange when depth
/// exceeds the number of supplied radices.
RadixSequence build_radix(std::span<const int> radices, int depth,
                          std::uint64_t capacity = kDefaultCapacity);

inline RadixSequence build_radix(std::span<const int> radices) {
  return build_radix(radices, static_cast<int>(radices.size()));
}

/// Parses "2,3,2,4". Whitespace around entries is ignored.
std::vector<int> parse_radix_list(std::string_view csv);

/// Repeats `pattern` cyclically until it has `depth` entries.
std::vector<int> repeat_pattern(std::span<const int> pattern, int depth);

struct GroupPoint {
  std::vector<int> digits;
  bool operator==(const GroupPoint&) const = default;
};

struct MixedRadixIndex {
  std::uint64_t value = 0;
  std::vector<int> digits;
  /// |n| = max{j : n_j != 0}; -1 for n = 0.
  int order = -1;
};

inline constexpr int kZeroOrder = -1;

MixedRadixIndex decompose(std::uint64_t n, const RadixSequence& rs);
std::uint64_t compose(std::span<const int> digits, const RadixSequence& rs);

/// Digit k of the linear index i, without building a full expansion.
inline int digit_of(std::uint64_t i, const RadixSequence& rs, int k) {
  return static_cast<int>((i / rs.scale(k)) % static_cast<std::uint64_t>(rs.radix(k)));
}

struct Cylinder {
  int rank = 0;
  std::vector<int> anchor;
  /// mu(I) = 1 / M_rank, kept as the exact denominator.
  std::uint64_t inverse_measure = 1;

  double measure() const noexcept { return 1.0 / static_cast<double>(inverse_measure); }
  /// Linear index of the anchor among rank-`rank` cylinders.
  std::uint64_t anchor_index(const RadixSequence& rs) const;
  /// True when rank-N cell `i` lies inside this cylinder.
  bool contains(std::uint64_t i, const RadixSequence& rs) const;
};

Cylinder cylinder_of(const GroupPoint& point, int rank, const RadixSequence& rs);

/// All M_N rank-N anchors; position i carries decompose(i).
std::vector<GroupPoint> enumerate_points(const RadixSequence& rs);

/// exp(2 pi i r / m), exact at quarter turns.
cplx root_of_unity(int r, int m);

}  // namespace vlab
