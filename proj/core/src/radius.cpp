#include "dbr/radius.hpp"

#include <algorithm>
#include <cmath>

#include "dbr/error.hpp"
#include "dbr/witnesses.hpp"

namespace dbr {

void RatioReport::add(double size, double ratio) {
  series.emplace_back(size, ratio);
  ++instances;
  max_ratio = std::max(max_ratio, ratio);
}

RadiusBound witness_upper_Lm(const DirichletPolynomial& D, std::uint32_t m, double sup_upper) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "homogeneity degree must be >= 1");
  for (const auto& [n, a] : D.terms()) {
    if (big_omega(n) != m) {
      throw Error(ErrorCode::invalid_argument, "index " + std::to_string(n) + " has Omega != " + std::to_string(m));
    }
  }
  const double l1 = D.l1_norm();
  if (!(l1 > 0.0)) throw Error(ErrorCode::degenerate_witness, "witness has zero l1 norm");
  if (!(sup_upper >= 0.0)) throw Error(ErrorCode::invalid_argument, "sup bound must be non-negative");
  RadiusBound b;
  b.upper = std::min(1.0, std::pow(sup_upper / l1, 1.0 / m));
  b.lower = 0.0;
  b.certified_upper = true;
  b.method = "witness-L" + std::to_string(m);
  return b;
}

double asymptotic_target(double x) { return std::pow(std::log(x), 0.25) * std::pow(x, -0.125); }

RadiusBound upper_bound_Lx(double x) {
  if (!(x >= 2.0)) throw Error(ErrorCode::invalid_argument, "x must be >= 2");
  RadiusBound b;
  b.certified_upper = true;
  if (x < 49.0) {
    b.upper = 1.0;
    b.method = "trivial";
    b.provenance.push_back("r <= 1 by definition");
    return b;
  }
  const PrimeTable table(static_cast<std::uint64_t>(std::sqrt(x)) + 2);
  const MatrixWitness w = dft_witness(x, table);
  b = witness_upper_Lm(w.D, 2, w.analytic_sup_bound);
  b.method = "dft-witness-L2";
  b.provenance.push_back("dft-witness q=" + std::to_string(w.q) + " sup<=q^{3/2}");
  return b;
}

std::vector<double> log_grid(double lo, double hi, std::uint32_t points) {
  if (points == 0 || !(lo > 0.0) || !(hi >= lo)) throw Error(ErrorCode::invalid_argument, "bad grid range");
  std::vector<double> xs(points);
  if (points == 1) {
    xs[0] = lo;
    return xs;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::uint32_t i = 0; i < points; ++i) xs[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

AsymptoticFit asymptotic_fit(const std::vector<double>& x_grid) {
  AsymptoticFit fit;
  for (double x : x_grid) {
    if (!(x >= 2.0)) throw Error(ErrorCode::invalid_argument, "asymptotic fit needs x >= 2");
    const PrimeTable table(static_cast<std::uint64_t>(std::sqrt(x)) + 2);
    fit.x.push_back(x);
    fit.q.push_back(static_cast<std::uint32_t>(prime_pi(std::sqrt(x), table) / 2));
    fit.upper.push_back(upper_bound_Lx(x).upper);
    fit.target.push_back(asymptotic_target(x));
    fit.ratio.push_back(fit.upper.back() / fit.target.back());
  }
  if (!fit.ratio.empty()) {
    fit.min_ratio = *std::min_element(fit.ratio.begin(), fit.ratio.end());
    fit.max_ratio = *std::max_element(fit.ratio.begin(), fit.ratio.end());
  }
  return fit;
}

SandwichResult sandwich_check(const IndexSet& J, const SearchBudget& budget, std::uint64_t seed,
                              const PrimeTable& table, double tolerance) {
  if (J.size() > 60) throw Error(ErrorCode::resource_limit, "sandwich_check supports |J| <= 60");
  SandwichResult out;
  out.tolerance = tolerance;
  std::vector<PolydiscPolynomial> warm;
  for (std::uint32_t m : homogeneity_degrees(J)) {
    KEstimate est = heuristic_L(kernel_hom(J, m), budget, seed, table);
    if (est.best) warm.push_back(est.best->f);
    out.min_Lm_upper = std::min(out.min_Lm_upper, est.bound.upper);
    out.min_Lm_lower = std::min(out.min_Lm_lower, est.bound.lower);
    out.Lm.emplace_back(m, std::move(est));
  }
  out.L = heuristic_L(J, budget, seed, table, warm);
  out.pass = out.L.bound.upper <= out.min_Lm_upper + tolerance &&
             out.L.bound.lower >= out.min_Lm_lower / 3.0 - tolerance;
  return out;
}

KernelSeries kernel_monotonicity(const IndexSet& J, std::uint32_t n_max, const SearchBudget& budget,
                                 std::uint64_t seed, const PrimeTable& table, double tolerance) {
  KernelSeries out;
  out.tolerance = tolerance;
  out.non_increasing = true;
  std::vector<PolydiscPolynomial> warm;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const IndexSet kernel = kernel_dim(J, n, table);
    KEstimate est = heuristic_L(kernel, budget, seed, table, warm);
    if (est.best) warm.push_back(est.best->f);
    if (!out.upper.empty() && est.bound.upper > out.upper.back() + tolerance) out.non_increasing = false;
    out.n.push_back(n);
    out.sizes.push_back(kernel.size());
    out.upper.push_back(est.bound.upper);
    out.lower.push_back(est.bound.lower);
  }
  return out;
}

}  // namespace dbr
