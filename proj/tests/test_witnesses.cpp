#include <cmath>

#include "doctest.h"

#include "dbr/error.hpp"
#include "dbr/numtheory.hpp"
#include "dbr/witnesses.hpp"

using namespace dbr;

TEST_SUITE("witnesses") {

TEST_CASE("DFT witness construction") {
  const PrimeTable table(1000);
  for (std::uint32_t q = 2; q <= 12; ++q) {
    const MatrixWitness w = dft_witness_for_q(q, table);
    CHECK(w.q == q);
    CHECK(w.D.size() == q * q);
    CHECK(w.l1 == doctest::Approx(q * q).epsilon(1e-15));
    CHECK(w.analytic_sup_bound == doctest::Approx(std::pow(q, 1.5)).epsilon(1e-15));
    CHECK(w.orthogonality_residual() <= 1e-9);
    // support is {p_{n+1} p_{q+k+1}}, all 2-homogeneous and below x
    for (std::uint32_t n = 0; n < q; ++n) {
      for (std::uint32_t k = 0; k < q; ++k) {
        const std::uint64_t idx = table.nth(n + 1) * table.nth(q + k + 1);
        CHECK(static_cast<double>(idx) <= w.x);
        CHECK(std::abs(std::abs(w.D.coefficient(idx)) - 1.0) < 1e-15);
      }
    }
  }
}

TEST_CASE("DFT witness from x") {
  const PrimeTable table(1000);
  const MatrixWitness w = dft_witness(1e4, table);
  // pi(100) = 25
  CHECK(w.q == 12);
  CHECK_THROWS_AS(dft_witness(48, table), Error);
  CHECK(dft_witness(49, table).q == 2);
}

TEST_CASE("Moebius witness") {
  for (const double a : {0.5, 0.9, 0.99, 0.999}) {
    const MoebiusWitness w = moebius_witness(a, 200);
    CHECK(w.closed_form_r == doctest::Approx(1.0 / (1.0 + 2.0 * a)).epsilon(1e-15));
    CHECK(std::abs(w.certified_r - w.closed_form_r) < 1e-5);
    CHECK(w.truncated_r >= w.certified_r);
    CHECK(w.sup_upper >= 1.0);
    CHECK(w.P.size() == 201);
  }
  CHECK_THROWS_AS(moebius_witness(1.0), Error);
  CHECK_THROWS_AS(moebius_witness(0.0), Error);
}

TEST_CASE("Moebius radii decrease toward one third") {
  double previous = 1.0;
  for (const double a : {0.9, 0.99, 0.999}) {
    const double r = moebius_witness(a, 200).certified_r;
    CHECK(r < previous);
    CHECK(r > 1.0 / 3.0);
    previous = r;
  }
}

TEST_CASE("Steinhaus polynomials") {
  const PolydiscPolynomial P = steinhaus_witness(4, 3, 1);
  CHECK(P.size() == homogeneous_monomial_count(4, 3));
  CHECK(homogeneous_monomial_count(4, 3) == 20);
  for (const auto& [alpha, c] : P.terms()) {
    CHECK(alpha.degree() == 3);
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-15);
  }
  CHECK(steinhaus_witness(4, 3, 1).terms() == P.terms());
  CHECK(steinhaus_witness(4, 3, 2).terms() != P.terms());
  CHECK_THROWS_AS(steinhaus_witness(11, 2, 1), Error);

  const DirichletPolynomial D = steinhaus_dirichlet(100, 2, 1);
  for (const auto& [n, c] : D.terms()) CHECK(big_omega(n) == 2);
  // semiprimes up to 100 (counted with multiplicity)
  std::size_t count = 0;
  for (std::uint64_t n = 2; n <= 100; ++n) count += big_omega(n) == 2 ? 1 : 0;
  CHECK(D.size() == count);
}

TEST_CASE("critical radius") {
  PolydiscPolynomial P(1);
  P.set(MultiIndex{}, 0.5);
  P.set(MultiIndex::unit(1), 1.0);
  // 0.5 + r = 1
  CHECK(critical_radius(P, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
}

}  // TEST_SUITE
