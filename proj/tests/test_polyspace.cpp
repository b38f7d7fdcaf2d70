#include "doctest.h"

#include "dbr/error.hpp"
#include "dbr/polyspace.hpp"
#include "dbr/rng.hpp"
#include "dbr/witnesses.hpp"

using namespace dbr;

namespace {

IndexSet set_of(std::vector<std::uint64_t> v) { return IndexSet(std::move(v), "test"); }

}  // namespace

TEST_SUITE("polyspace") {

TEST_CASE("MultiIndex canonical form") {
  CHECK(MultiIndex::from_dense({0, 2, 0}) == MultiIndex::unit(2, 2));
  CHECK(MultiIndex::from_pairs({{3, 1}, {1, 2}, {3, 1}}) == MultiIndex::from_dense({2, 0, 2}));
  CHECK(MultiIndex::from_dense({1, 2}).degree() == 3);
  CHECK(MultiIndex::from_dense({1, 2}).max_coordinate() == 2);
  CHECK((MultiIndex::unit(1) + MultiIndex::unit(2)) == MultiIndex::from_dense({1, 1}));
}

TEST_CASE("lift examples") {
  const PrimeTable table(100);
  DirichletPolynomial six(10);
  six.set(6, 1.0);
  const PolydiscPolynomial f = lift(six, table);
  CHECK(f.dimension() == 4);
  CHECK(f.size() == 1);
  CHECK(f.coefficient(MultiIndex::from_dense({1, 1})) == Complex(1.0));

  DirichletPolynomial one(1);
  one.set(1, 1.0);
  CHECK(lift(one, table).coefficient(MultiIndex{}) == Complex(1.0));

  DirichletPolynomial d(4);
  d.set(2, 1.0);
  d.set(4, 3.0);
  const PolydiscPolynomial g = lift(d, table);
  CHECK(g.dimension() == 2);
  CHECK(g.coefficient(MultiIndex::unit(1, 1)) == Complex(1.0));
  CHECK(g.coefficient(MultiIndex::unit(1, 2)) == Complex(3.0));
}

TEST_CASE("push examples and offenders") {
  const PrimeTable table(100);
  PolydiscPolynomial p(2);
  p.set(MultiIndex::from_dense({1, 1}), 1.0);
  CHECK(push(p, 10, table).coefficient(6) == Complex(1.0));

  PolydiscPolynomial c(1);
  c.set(MultiIndex{}, 5.0);
  CHECK(push(c, 1, table).coefficient(1) == Complex(5.0));

  PolydiscPolynomial cube(2);
  cube.set(MultiIndex::unit(2, 3), 1.0);
  CHECK(push(cube, 100, table).coefficient(27) == Complex(1.0));
  try {
    push(cube, 20, table);
    FAIL("expected index_out_of_range");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::index_out_of_range);
    CHECK(std::string(e.what()).find("27") != std::string::npos);
  }
}

TEST_CASE("lift and push are inverse") {
  const PrimeTable table(1000);
  Rng rng(3);
  DirichletPolynomial D(500);
  for (std::uint64_t n = 1; n <= 500; ++n) {
    if (rng.uniform() < 0.3) D.set(n, Complex(rng.normal(), 0.5));
  }
  const DirichletPolynomial back = push(lift(D, table), 500, table);
  CHECK(back.terms() == D.terms());
}

TEST_CASE("coefficient access errors") {
  DirichletPolynomial D(10);
  CHECK_THROWS_AS(D.set(11, 1.0), Error);
  CHECK_THROWS_AS(D.set(0, 1.0), Error);
  PolydiscPolynomial P(2);
  CHECK_THROWS_AS(P.set(MultiIndex::unit(3), 1.0), Error);
}

TEST_CASE("homogeneous parts") {
  PolydiscPolynomial P(2);
  P.set(MultiIndex{}, 1.0);
  P.set(MultiIndex::unit(1), 1.0);
  P.set(MultiIndex::from_dense({1, 1}), 1.0);
  const PolydiscPolynomial h = homogeneous_part(P, 2);
  CHECK(h.size() == 1);
  CHECK(h.coefficient(MultiIndex::from_dense({1, 1})) == Complex(1.0));
  CHECK(homogeneous_part(P, 7).empty());

  const PrimeTable table(1000);
  const MatrixWitness w = dft_witness_for_q(4, table);
  const PolydiscPolynomial f = lift(w.D, table);
  CHECK(homogeneous_part(f, 2).terms() == f.terms());
}

TEST_CASE("kernels") {
  const PrimeTable table(1000);
  const IndexSet J10 = enumerate_range(10);
  CHECK(kernel_dim(J10, 1, table).members() == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(kernel_dim(J10, 2, table).members() == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9});
  CHECK(kernel_dim(set_of({2, 3, 5, 7, 11, 13, 17, 19, 23, 29}), 3, table).members() ==
        std::vector<std::uint64_t>{2, 3, 5});
  CHECK(kernel_hom(J10, 2).members() == std::vector<std::uint64_t>{4, 6, 9, 10});
  CHECK(kernel_hom(J10, 0).members() == std::vector<std::uint64_t>{1});
  CHECK(homogeneity_degrees(J10) == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("kernel operators commute") {
  const PrimeTable table(1000);
  const IndexSet J = enumerate_range(100);
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (std::uint32_t m = 0; m <= 5; ++m) {
      REQUIRE(kernel_hom(kernel_dim(J, n, table), m) == kernel_dim(kernel_hom(J, m), n, table));
    }
  }
}

TEST_CASE("kernel saturates past the largest prime index") {
  const PrimeTable table(1000);
  const IndexSet J = enumerate_range(30);
  CHECK(kernel_dim(J, 10, table) == J);
  CHECK(kernel_dim(J, 40, table) == J);
}

TEST_CASE("block index sets") {
  std::vector<std::vector<std::uint64_t>> singletons;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) singletons.push_back({p});
  CHECK(block_index_set(singletons, 30).members() ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29});
  CHECK(block_index_set({{2, 3}}, 12).members() == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 12});
  CHECK(block_index_set({}, 10).members() == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(block_index_set({{2, 3}, {3}}, 10), Error);
  CHECK_THROWS_AS(block_index_set({{4}}, 10), Error);
}

TEST_CASE("decode_set follows the Bohr lift") {
  const PrimeTable table(100);
  const auto lambda = decode_set(set_of({1, 2, 6, 9}), table);
  REQUIRE(lambda.size() == 4);
  CHECK(lambda[0] == MultiIndex{});
  CHECK(lambda[1] == MultiIndex::unit(1));
  CHECK(lambda[2] == MultiIndex::from_dense({1, 1}));
  CHECK(lambda[3] == MultiIndex::unit(2, 2));
}

}  // TEST_SUITE
