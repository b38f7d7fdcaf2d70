#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace dbr {

/// Finitely supported exponent vector alpha, stored sparsely as ascending
/// (coordinate, exponent) pairs. Coordinates are 1-based; zero exponents are
/// never stored, so structural equality is equality of alpha.
class MultiIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  MultiIndex() = default;

  /// Dense constructor: exponents[j-1] is the exponent of coordinate j.
  static MultiIndex from_dense(std::initializer_list<std::uint32_t> exponents);
  static MultiIndex from_dense(const std::vector<std::uint32_t>& exponents);

  /// Sparse constructor; entries may be unsorted and may repeat a
  /// coordinate (exponents add). Zero exponents are dropped.
  static MultiIndex from_pairs(std::vector<Entry> entries);

  /// The unit vector e_j.
  static MultiIndex unit(std::uint32_t coordinate, std::uint32_t exponent = 1);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// |alpha|
  std::uint32_t degree() const noexcept;
  /// Largest coordinate with a nonzero exponent, 0 for the empty index.
  std::uint32_t max_coordinate() const noexcept;
  std::uint32_t exponent(std::uint32_t coordinate) const noexcept;

  MultiIndex operator+(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace dbr
