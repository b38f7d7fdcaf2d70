#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dbr/multi_index.hpp"

namespace dbr {

/// Hard ceiling for sieving; beyond this the table would not fit in memory
/// anyway and results are reported as resource-limit errors.
inline constexpr std::uint64_t kSieveCap = std::uint64_t{1} << 40;

/// Largest value bohr_encode may return.
inline constexpr std::uint64_t kEncodeMax = (std::uint64_t{1} << 63) - 1;

/// Immutable ascending table of every prime <= limit.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }

  /// The k-th prime, 1-based (nth(1) == 2).
  std::uint64_t nth(std::size_t k) const;

  /// 1-based position of prime p in the table, or 0 if p is not a tabulated prime.
  std::size_t index_of(std::uint64_t p) const noexcept;

  bool contains_prime(std::uint64_t p) const noexcept { return index_of(p) != 0; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> pairs;  // (prime, exponent), ascending

  unsigned big_omega() const noexcept;
  std::uint64_t largest_prime() const noexcept { return pairs.empty() ? 1 : pairs.back().first; }
};

PrimeTable sieve_primes(std::uint64_t limit);

/// Number of primes <= x. Throws table_too_small when x exceeds the table.
std::uint64_t prime_pi(double x, const PrimeTable& table);

Factorization factorize(std::uint64_t n);
unsigned big_omega(std::uint64_t n);

/// n = prod p_j^{alpha_j}. Throws encode_overflow (naming the coordinate)
/// once the product leaves [1, 2^63 - 1].
std::uint64_t bohr_encode(const MultiIndex& alpha, const PrimeTable& table);

/// Inverse of bohr_encode: exponent of p_j at coordinate j.
MultiIndex bohr_decode(std::uint64_t n, const PrimeTable& table);

/// sum_{p <= x} p^{-alpha}, summed from the smallest prime upwards.
double prime_power_sum(double alpha, double x, const PrimeTable& table);

}  // namespace dbr
