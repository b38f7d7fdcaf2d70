#include "dbr/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dbr/error.hpp"
#include "dbr/rng.hpp"

namespace dbr {

double MatrixWitness::orthogonality_residual() const {
  double worst = 0.0;
  for (std::uint32_t n = 0; n < q; ++n) {
    for (std::uint32_t k = 0; k < q; ++k) {
      Complex s{};
      for (std::uint32_t l = 0; l < q; ++l) s += matrix[l][n] * std::conj(matrix[l][k]);
      worst = std::max(worst, std::abs(s - (n == k ? static_cast<double>(q) : 0.0)));
    }
  }
  return worst;
}

namespace {

MatrixWitness build_dft(std::uint32_t q, double x, const PrimeTable& table) {
  MatrixWitness w;
  w.q = q;
  w.x = x;
  w.D = DirichletPolynomial(x);
  w.matrix.assign(q, std::vector<Complex>(q));
  for (std::uint32_t n = 0; n < q; ++n) {
    for (std::uint32_t k = 0; k < q; ++k) {
      // reduce n*k mod q first so the phase stays exact for large q
      const auto phase = static_cast<double>((static_cast<std::uint64_t>(n) * k) % q);
      w.matrix[n][k] = std::polar(1.0, 2.0 * std::numbers::pi * phase / q);
      const std::uint64_t index = table.nth(n + 1) * table.nth(q + k + 1);
      if (static_cast<double>(index) > x) {
        throw Error(ErrorCode::witness_unavailable, "support index " + std::to_string(index) + " exceeds x");
      }
      w.D.set(index, w.matrix[n][k]);
    }
  }
  w.l1 = static_cast<double>(q) * q;
  w.analytic_sup_bound = std::pow(static_cast<double>(q), 1.5);
  if (w.D.size() != static_cast<std::size_t>(q) * q) {
    throw Error(ErrorCode::witness_unavailable, "support indices collided");
  }
  return w;
}

}  // namespace

MatrixWitness dft_witness(double x, const PrimeTable& table) {
  if (!(x >= 2.0)) throw Error(ErrorCode::invalid_argument, "x must be >= 2");
  const double root = std::sqrt(x);
  const std::uint64_t pi_root = prime_pi(root, table);
  const auto q = static_cast<std::uint32_t>(pi_root / 2);
  if (q < 2) {
    throw Error(ErrorCode::witness_unavailable, "x = " + std::to_string(x) + " gives q = " + std::to_string(q) + " < 2");
  }
  return build_dft(q, x, table);
}

MatrixWitness dft_witness_for_q(std::uint32_t q, const PrimeTable& table) {
  if (q < 2) throw Error(ErrorCode::witness_unavailable, "q must be >= 2");
  const auto p = static_cast<double>(table.nth(2 * q));
  return build_dft(q, p * p, table);
}

namespace {

// sum_k |c_k| r^k for a one-variable coefficient list, Horner form.
double weighted_l1(const std::vector<double>& abs_coef, double r) {
  double acc = 0.0;
  for (std::size_t k = abs_coef.size(); k-- > 0;) acc = acc * r + abs_coef[k];
  return acc;
}

double bisect_root(const std::vector<double>& abs_coef, double target) {
  double lo = 0.0;
  double hi = 1.0;
  if (weighted_l1(abs_coef, hi) <= target) return 1.0;
  if (weighted_l1(abs_coef, lo) >= target) return 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (weighted_l1(abs_coef, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MoebiusWitness moebius_witness(double a, std::uint32_t degree_cap) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::invalid_argument, "Moebius parameter a must lie in (0,1)");
  if (degree_cap < 2) throw Error(ErrorCode::invalid_argument, "degree cap must be >= 2");
  MoebiusWitness w;
  w.a = a;
  w.degree = degree_cap;
  w.P = PolydiscPolynomial(1);
  std::vector<double> abs_coef(degree_cap + 1);
  abs_coef[0] = a;
  w.P.set(MultiIndex{}, a);
  double power = 1.0;  // a^{k-1}
  for (std::uint32_t k = 1; k <= degree_cap; ++k) {
    const double c = -(1.0 - a * a) * power;
    abs_coef[k] = -c;
    if (c != 0.0) w.P.set(MultiIndex::unit(1, k), c);
    power *= a;
  }
  // power == a^N now; the dropped tail has l1 mass (1 - a^2) a^N / (1 - a).
  w.sup_upper = 1.0 + (1.0 + a) * power;
  w.critical_r = bisect_root(abs_coef, 1.0);
  w.certified_r = w.critical_r;
  w.truncated_r = bisect_root(abs_coef, w.sup_upper);
  w.closed_form_r = 1.0 / (1.0 + 2.0 * a);
  return w;
}

std::uint64_t homogeneous_monomial_count(std::uint32_t n_vars, std::uint32_t m) {
  // C(n + m - 1, m), exact in 64 bits for the sizes allowed here
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= m; ++i) r = r * (n_vars + i - 1) / i;
  return r;
}

std::vector<MultiIndex> homogeneous_monomials(std::uint32_t n_vars, std::uint32_t m) {
  std::vector<MultiIndex> out;
  std::vector<std::uint32_t> exps(n_vars, 0);
  // distribute m among coordinates >= v
  auto rec = [&](auto&& self, std::uint32_t v, std::uint32_t left) -> void {
    if (v + 1 == n_vars) {
      exps[v] = left;
      out.push_back(MultiIndex::from_dense(exps));
      exps[v] = 0;
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      exps[v] = e;
      self(self, v + 1, left - e);
    }
    exps[v] = 0;
  };
  if (n_vars > 0) rec(rec, 0, m);
  std::sort(out.begin(), out.end());
  return out;
}

PolydiscPolynomial steinhaus_witness(std::uint32_t n_vars, std::uint32_t m, std::uint64_t seed) {
  if (n_vars == 0) throw Error(ErrorCode::invalid_argument, "need at least one variable");
  if (n_vars > 10 || m > 4) {
    throw Error(ErrorCode::resource_limit, "Steinhaus witnesses are limited to n_vars <= 10, m <= 4");
  }
  if (homogeneous_monomial_count(n_vars, m) > 100000) {
    throw Error(ErrorCode::resource_limit, "more than 10^5 monomials");
  }
  Rng rng(seed);
  PolydiscPolynomial P(n_vars);
  for (const auto& alpha : homogeneous_monomials(n_vars, m)) P.set(alpha, std::polar(1.0, rng.angle()));
  return P;
}

DirichletPolynomial steinhaus_dirichlet(double x, std::uint32_t m, std::uint64_t seed) {
  if (!(x >= 2.0)) throw Error(ErrorCode::invalid_argument, "x must be >= 2");
  if (x > 1e7) throw Error(ErrorCode::resource_limit, "Steinhaus Dirichlet polynomials are capped at x = 10^7");
  Rng rng(seed);
  DirichletPolynomial D(x);
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  for (std::uint64_t n = 1; n <= top; ++n) {
    if (big_omega(n) == m) D.set(n, std::polar(1.0, rng.angle()));
  }
  return D;
}

double critical_radius(const PolydiscPolynomial& P, double target) {
  std::vector<double> abs_coef(P.max_degree() + 1, 0.0);
  for (const auto& [alpha, c] : P.terms()) abs_coef[alpha.degree()] += std::abs(c);
  return bisect_root(abs_coef, target);
}

}  // namespace dbr
