#pragma once

#include <cstdint>
#include <vector>

#include "dbr/polyspace.hpp"

namespace dbr {

/// sum_{n,k<q} a_{nk} (p_{n+1} p_{q+k+1})^{-s} with a_{nk} = e^{2 pi i n k / q}:
/// unimodular entries with orthogonal columns, so l1 = q^2 while
/// Cauchy-Schwarz gives sup <= q^{3/2}.
struct MatrixWitness {
  std::uint32_t q = 0;
  double x = 0.0;
  DirichletPolynomial D{1.0};
  std::vector<std::vector<Complex>> matrix;  // matrix[n][k]
  double l1 = 0.0;
  double analytic_sup_bound = 0.0;

  /// max |sum_l a_{ln} conj(a_{lk}) - q delta_{nk}|
  double orthogonality_residual() const;
};

/// q = floor(pi(sqrt x) / 2). Throws witness_unavailable when q < 2 (x < 49).
MatrixWitness dft_witness(double x, const PrimeTable& table);

/// Same construction for a given q, placed at x = p_{2q}^2.
MatrixWitness dft_witness_for_q(std::uint32_t q, const PrimeTable& table);

/// Degree-N truncation of phi_a(z) = (a - z)/(1 - a z) in one variable.
struct MoebiusWitness {
  double a = 0.0;
  std::uint32_t degree = 0;
  PolydiscPolynomial P{1};
  /// Root of sum_{k<=N} |c_k| r^k = 1.
  double critical_r = 0.0;
  /// Certified upper bound on the Bohr radius of bounded functions in one
  /// variable: ||phi_a|| = 1 exactly and the truncated coefficient sum is a
  /// lower bound for the full one, so this equals critical_r.
  double certified_r = 0.0;
  /// 1 + l1 mass of the dropped tail: a certified bound on ||P||.
  double sup_upper = 0.0;
  /// Root of sum_{k<=N} |c_k| r^k = sup_upper; certified for the smaller
  /// class of polynomials of degree <= N, but loose when a^N is not small.
  double truncated_r = 0.0;
  /// 1 / (1 + 2a), the critical radius of phi_a itself.
  double closed_form_r = 0.0;
};

MoebiusWitness moebius_witness(double a, std::uint32_t degree_cap = 200);

/// m-homogeneous polynomial in n_vars variables with independent uniform
/// unimodular coefficients on every degree-m monomial.
PolydiscPolynomial steinhaus_witness(std::uint32_t n_vars, std::uint32_t m, std::uint64_t seed);

/// Dirichlet-side counterpart: unimodular coefficients on {n <= x : Omega(n) = m}.
DirichletPolynomial steinhaus_dirichlet(double x, std::uint32_t m, std::uint64_t seed);

/// Number of degree-m monomials in n variables, C(n + m - 1, m).
std::uint64_t homogeneous_monomial_count(std::uint32_t n_vars, std::uint32_t m);

/// All multi-indices in n_vars variables with |alpha| = m, ascending.
std::vector<MultiIndex> homogeneous_monomials(std::uint32_t n_vars, std::uint32_t m);

/// Root in [0, 1] of sum_i |c_i| r^{deg_i} = target (monotone in r).
double critical_radius(const PolydiscPolynomial& P, double target);

}  // namespace dbr
