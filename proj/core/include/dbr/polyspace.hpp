#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dbr/multi_index.hpp"
#include "dbr/numtheory.hpp"

namespace dbr {

using Complex = std::complex<double>;

/// sum_{n <= x} a_n n^{-s}, stored sparsely. Zero coefficients are dropped on
/// insertion, so terms() is exactly the support.
class DirichletPolynomial {
 public:
  explicit DirichletPolynomial(double length_bound);

  double length_bound() const noexcept { return x_; }
  const std::map<std::uint64_t, Complex>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Sets a_n (replacing any previous value). Throws index_out_of_range
  /// when n is 0 or exceeds the length bound.
  void set(std::uint64_t n, Complex a);
  Complex coefficient(std::uint64_t n) const noexcept;

  double l1_norm() const noexcept;
  DirichletPolynomial scaled(Complex factor) const;

 private:
  double x_;
  std::map<std::uint64_t, Complex> terms_;
};

/// sum_alpha c_alpha z^alpha over dimension() torus variables.
class PolydiscPolynomial {
 public:
  explicit PolydiscPolynomial(std::uint32_t dimension);

  std::uint32_t dimension() const noexcept { return d_; }
  const std::map<MultiIndex, Complex>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Sets c_alpha. Throws invalid_argument if alpha uses a coordinate above dimension().
  void set(const MultiIndex& alpha, Complex c);
  /// c_alpha += c, dropping the term if the sum vanishes.
  void add(const MultiIndex& alpha, Complex c);
  Complex coefficient(const MultiIndex& alpha) const noexcept;

  double l1_norm() const noexcept;
  std::uint32_t max_degree() const noexcept;
  std::uint32_t max_coordinate() const noexcept;
  PolydiscPolynomial scaled(Complex factor) const;
  /// Same terms viewed in a (possibly larger) dimension.
  PolydiscPolynomial with_dimension(std::uint32_t dimension) const;

 private:
  std::uint32_t d_;
  std::map<MultiIndex, Complex> terms_;
};

/// Explicit finite set of positive integers, sorted and duplicate-free.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<std::uint64_t> members, std::string label);

  const std::vector<std::uint64_t>& members() const noexcept { return members_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::uint64_t n) const noexcept;
  std::uint64_t max() const noexcept { return members_.empty() ? 0 : members_.back(); }

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.members_ == b.members_; }

 private:
  std::vector<std::uint64_t> members_;
  std::string label_;
};

/// D -> f with c_alpha(f) = a_{p^alpha}, in prime_pi(x) variables.
PolydiscPolynomial lift(const DirichletPolynomial& D, const PrimeTable& table);

/// Inverse of lift. Throws index_out_of_range listing every p^alpha > x.
DirichletPolynomial push(const PolydiscPolynomial& P, double x, const PrimeTable& table);

PolydiscPolynomial homogeneous_part(const PolydiscPolynomial& P, std::uint32_t m);

/// J(n): members whose prime factors are all among p_1..p_n.
IndexSet kernel_dim(const IndexSet& J, std::uint32_t n, const PrimeTable& table);
/// J[m]: members with Omega(k) = m.
IndexSet kernel_hom(const IndexSet& J, std::uint32_t m);

/// Union over blocks of all products of the block's primes, capped at x; 1 is
/// always a member. Blocks must be pairwise disjoint sets of primes.
IndexSet block_index_set(const std::vector<std::vector<std::uint64_t>>& blocks, double x);

/// {1, ..., floor(x)}
IndexSet enumerate_range(double x);

/// Monomial support b^{-1}(J).
std::vector<MultiIndex> decode_set(const IndexSet& J, const PrimeTable& table);

/// Distinct Omega values occurring in J, ascending.
std::vector<std::uint32_t> homogeneity_degrees(const IndexSet& J);

}  // namespace dbr
