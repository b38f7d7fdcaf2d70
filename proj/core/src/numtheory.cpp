#include "dbr/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbr/error.hpp"

namespace dbr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::resource_limit: return "resource-limit";
    case ErrorCode::table_too_small: return "table-too-small";
    case ErrorCode::encode_overflow: return "encode-overflow";
    case ErrorCode::lift_failure: return "lift-failure";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::aliasing: return "aliasing-error";
    case ErrorCode::precondition_violation: return "precondition-violation";
    case ErrorCode::witness_unavailable: return "witness-unavailable";
    case ErrorCode::degenerate_witness: return "degenerate-witness";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

// --- MultiIndex -----------------------------------------------------------

MultiIndex MultiIndex::from_dense(std::initializer_list<std::uint32_t> exponents) {
  return from_dense(std::vector<std::uint32_t>(exponents));
}

MultiIndex MultiIndex::from_dense(const std::vector<std::uint32_t>& exponents) {
  MultiIndex out;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (exponents[j] != 0) out.entries_.emplace_back(static_cast<std::uint32_t>(j + 1), exponents[j]);
  }
  return out;
}

MultiIndex MultiIndex::from_pairs(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  MultiIndex out;
  for (const auto& [coord, exp] : entries) {
    if (coord == 0) throw Error(ErrorCode::invalid_argument, "multi-index coordinates are 1-based");
    if (exp == 0) continue;
    if (!out.entries_.empty() && out.entries_.back().first == coord) {
      out.entries_.back().second += exp;
    } else {
      out.entries_.emplace_back(coord, exp);
    }
  }
  return out;
}

MultiIndex MultiIndex::unit(std::uint32_t coordinate, std::uint32_t exponent) {
  return from_pairs({{coordinate, exponent}});
}

std::uint32_t MultiIndex::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& e : entries_) d += e.second;
  return d;
}

std::uint32_t MultiIndex::max_coordinate() const noexcept {
  return entries_.empty() ? 0 : entries_.back().first;
}

std::uint32_t MultiIndex::exponent(std::uint32_t coordinate) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{coordinate, 0});
  return (it != entries_.end() && it->first == coordinate) ? it->second : 0;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  std::vector<Entry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return from_pairs(std::move(all));
}

// --- primes ---------------------------------------------------------------

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Segmented Eratosthenes: base primes up to sqrt(limit), then fixed-size windows.
std::vector<std::uint64_t> segmented_sieve(std::uint64_t limit) {
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const std::vector<std::uint64_t> base = small_primes(root);
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

  std::vector<std::uint64_t> out;
  std::vector<char> composite(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(limit, lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    for (std::uint64_t i = lo; i <= hi; ++i) {
      if (!composite[i - lo]) out.push_back(i);
    }
  }
  return out;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw Error(ErrorCode::invalid_argument, "sieve limit must be >= 2");
  if (limit > kSieveCap) throw Error(ErrorCode::resource_limit, "sieve limit exceeds 2^40");
  primes_ = segmented_sieve(limit);
}

std::uint64_t PrimeTable::nth(std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "prime index is 1-based");
  if (k > primes_.size()) {
    throw Error(ErrorCode::table_too_small,
                "prime #" + std::to_string(k) + " is beyond the table limit " + std::to_string(limit_));
  }
  return primes_[k - 1];
}

std::size_t PrimeTable::index_of(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return 0;
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

unsigned Factorization::big_omega() const noexcept {
  unsigned total = 0;
  for (const auto& pe : pairs) total += pe.second;
  return total;
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable(limit); }

std::uint64_t prime_pi(double x, const PrimeTable& table) {
  if (!(x >= 0.0)) throw Error(ErrorCode::invalid_argument, "prime_pi needs x >= 0");
  if (x > static_cast<double>(table.limit())) {
    throw Error(ErrorCode::table_too_small, "prime_pi(" + std::to_string(x) + ") beyond table limit " +
                                                std::to_string(table.limit()));
  }
  const auto floor_x = static_cast<std::uint64_t>(std::floor(x));
  auto primes = table.primes();
  return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), floor_x) - primes.begin());
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cannot factorize 0");
  Factorization f;
  f.n = n;
  auto pull = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.pairs.emplace_back(p, e);
  };
  pull(2);
  pull(3);
  // 6k +- 1 wheel
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    pull(p);
    pull(p + 2);
  }
  if (n > 1) f.pairs.emplace_back(n, 1);
  return f;
}

unsigned big_omega(std::uint64_t n) { return factorize(n).big_omega(); }

std::uint64_t bohr_encode(const MultiIndex& alpha, const PrimeTable& table) {
  std::uint64_t n = 1;
  for (const auto& [coord, exp] : alpha.entries()) {
    const std::uint64_t p = table.nth(coord);
    for (std::uint32_t k = 0; k < exp; ++k) {
      if (n > kEncodeMax / p) {
        throw Error(ErrorCode::encode_overflow,
                    "p^alpha exceeds 2^63-1 at coordinate " + std::to_string(coord));
      }
      n *= p;
    }
  }
  return n;
}

MultiIndex bohr_decode(std::uint64_t n, const PrimeTable& table) {
  const Factorization f = factorize(n);
  std::vector<MultiIndex::Entry> entries;
  entries.reserve(f.pairs.size());
  for (const auto& [p, e] : f.pairs) {
    const std::size_t idx = table.index_of(p);
    if (idx == 0) {
      throw Error(ErrorCode::table_too_small,
                  "prime factor " + std::to_string(p) + " of " + std::to_string(n) + " is not in the table");
    }
    entries.emplace_back(static_cast<std::uint32_t>(idx), e);
  }
  return MultiIndex::from_pairs(std::move(entries));
}

double prime_power_sum(double alpha, double x, const PrimeTable& table) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::invalid_argument, "alpha must lie in (0,1)");
  if (x < 2.0) throw Error(ErrorCode::invalid_argument, "prime_power_sum needs x >= 2");
  const std::uint64_t count = prime_pi(x, table);
  double sum = 0.0;
  auto primes = table.primes();
  for (std::uint64_t i = 0; i < count; ++i) sum += std::pow(static_cast<double>(primes[i]), -alpha);
  return sum;
}

}  // namespace dbr
