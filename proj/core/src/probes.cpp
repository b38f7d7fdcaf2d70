#include <cmath>
#include <map>

#include "dbr/error.hpp"
#include "dbr/radius.hpp"

namespace dbr {

double bcq_weight(std::uint64_t n, std::uint32_t m) {
  const double ln = std::log(static_cast<double>(n));
  const double e = (m - 1.0) / 2.0;
  return std::pow(ln, e) / std::pow(static_cast<double>(n), e / m);
}

double monster_weight(std::uint64_t n, double epsilon) {
  const double ln = std::log(static_cast<double>(n));
  // log log n < 0 for n = 2 (and undefined for n = 1); clamped to 0
  const double lln = ln > 0.0 ? std::max(0.0, std::log(ln)) : 0.0;
  const double c = 1.0 / std::sqrt(2.0) - epsilon;
  return std::exp(c * std::sqrt(ln * lln)) / std::sqrt(static_cast<double>(n));
}

namespace {

RatioProbe finish(double numerator, double denominator) {
  RatioProbe p;
  p.numerator = numerator;
  p.denominator = denominator;
  if (!(denominator > 0.0)) throw Error(ErrorCode::degenerate_witness, "zero polynomial in ratio probe");
  p.ratio = numerator / denominator;
  return p;
}

}  // namespace

RatioProbe bcq_ratio(const DirichletPolynomial& D, std::uint32_t m, const SupBudget& budget, std::uint64_t seed,
                     const PrimeTable& table) {
  if (m < 2) throw Error(ErrorCode::invalid_argument, "the weighted bound needs m >= 2");
  double numerator = 0.0;
  for (const auto& [n, a] : D.terms()) {
    if (n == 1 || big_omega(n) != m) {
      throw Error(ErrorCode::invalid_argument, "index " + std::to_string(n) + " is not " + std::to_string(m) +
                                                   "-homogeneous");
    }
    numerator += std::abs(a) * bcq_weight(n, m);
  }
  return finish(numerator, dirichlet_sup(D, budget, seed, table).estimate.lower);
}

double fred2_numerator(const PolydiscPolynomial& P, std::uint32_t m) {
  std::map<std::uint32_t, double> group_sq;  // j_m -> sum |c|^2
  for (const auto& [alpha, c] : P.terms()) {
    if (alpha.degree() != m) {
      throw Error(ErrorCode::invalid_argument, "polynomial is not " + std::to_string(m) + "-homogeneous");
    }
    // sorted tuple j_1 <= ... <= j_m has j_m = the largest coordinate in alpha
    group_sq[alpha.max_coordinate()] += std::norm(c);
  }
  double total = 0.0;
  for (const auto& [j, sq] : group_sq) total += std::sqrt(sq);
  return total;
}

RatioProbe fred2_ratio(const PolydiscPolynomial& P, std::uint32_t m, const SupBudget& budget, std::uint64_t seed) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "m must be >= 1");
  const double numerator = fred2_numerator(P, m);
  return finish(numerator, sup_lower(P, budget, seed).lower);
}

RatioProbe monster_ratio(const DirichletPolynomial& D, double epsilon, const SupBudget& budget, std::uint64_t seed,
                         const PrimeTable& table) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / std::sqrt(2.0))) {
    throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1/sqrt 2)");
  }
  double numerator = 0.0;
  for (const auto& [n, a] : D.terms()) numerator += std::abs(a) * monster_weight(n, epsilon);
  return finish(numerator, dirichlet_sup(D, budget, seed, table).estimate.lower);
}

}  // namespace dbr
