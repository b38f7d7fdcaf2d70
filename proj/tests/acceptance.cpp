// Acceptance run: one PASS/FAIL line per criterion, followed by the measured
// values. Tolerances and runtime limits are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dbr/app.hpp"
#include "dbr/numtheory.hpp"
#include "dbr/radius.hpp"
#include "dbr/rng.hpp"
#include "dbr/supnorm.hpp"
#include "dbr/witnesses.hpp"

using namespace dbr;

namespace {

constexpr std::uint64_t kSeed = 0x5EED;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<MultiIndex> one_variable(std::uint32_t degree) {
  std::vector<MultiIndex> lambda;
  for (std::uint32_t k = 0; k <= degree; ++k) lambda.push_back(MultiIndex::unit(1, k));
  return lambda;
}

// Independent oracles --------------------------------------------------------

std::uint64_t pi_by_trial(std::uint64_t x) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 2; n <= x; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    count += prime ? 1 : 0;
  }
  return count;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < count; ++n) {
    bool prime = true;
    for (const std::uint64_t p : out) {
      if (p * p > n) break;
      if (n % p == 0) prime = false;
    }
    if (prime) out.push_back(n);
  }
  return out;
}

// Criteria ---------------------------------------------------------------------

Outcome bohr_one_third() {
  Outcome o;
  const double expected[] = {0.35714, 0.33557, 0.33356};
  const double as[] = {0.9, 0.99, 0.999};
  double previous = 1.0;
  for (int i = 0; i < 3; ++i) {
    const MoebiusWitness w = moebius_witness(as[i], 200);
    const double closed = 1.0 / (1.0 + 2.0 * as[i]);
    o.expect(std::abs(w.certified_r - closed) <= 1e-5 && std::abs(w.certified_r - expected[i]) <= 1e-5,
             "a=" + fmt("%g", as[i]) + ": certified r " + fmt("%.8f", w.certified_r) + " vs 1/(1+2a) " +
                 fmt("%.8f", closed));
    o.expect(w.certified_r < previous && w.certified_r > 1.0 / 3.0, "radii decrease toward 1/3");
    previous = w.certified_r;
  }
  const SearchBudget budget;
  const KEstimate e = heuristic_K(one_variable(20), budget, kSeed);
  o.expect(e.bound.upper <= 0.36, "degree <= 20 estimate upper " + fmt("%.5f", e.bound.upper) + " <= 0.36");
  const bool none = !find_violator(one_variable(20), 0.30, budget, kSeed);
  o.expect(none, "no violator at r = 0.30");
  return o;
}

Outcome l1_exactness() {
  Outcome o;
  const PrimeTable table(100);
  const auto primes = first_primes(8);
  Rng rng(split_seed(kSeed, 2));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto d = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
    DirichletPolynomial D(static_cast<double>(primes[d - 1]));
    double l1 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      D.set(primes[j], Complex(re, im));
      l1 += std::hypot(re, im);
    }
    SupBudget budget;
    const SupEstimate e = dirichlet_sup(D, budget, split_seed(kSeed, i), table).estimate;
    worst = std::max(worst, (l1 - e.lower) / l1);
  }
  o.expect(worst <= 1e-6, "max relative gap to l1 over 50 forms: " + fmt("%.3e", worst));
  return o;
}

Outcome dft_chain() {
  Outcome o;
  const PrimeTable table(50000);
  const auto primes = first_primes(48);
  bool invariants = true;
  double worst_residual = 0.0;
  double worst_sup = 0.0;
  double worst_bound_ulps = 0.0;
  for (std::uint32_t q = 4; q <= 24; ++q) {
    const MatrixWitness w = dft_witness_for_q(q, table);
    invariants = invariants && w.l1 == static_cast<double>(q * q) && w.D.size() == q * q;
    for (std::uint32_t n = 0; n < q; ++n) {
      for (std::uint32_t k = 0; k < q; ++k) {
        const Complex a = w.D.coefficient(primes[n] * primes[q + k]);
        const Complex expect = std::polar(1.0, 2.0 * std::numbers::pi * n * k / q);
        invariants = invariants && std::abs(std::abs(a) - 1.0) <= 1e-15 && std::abs(a - expect) <= 1e-12;
      }
    }
    worst_residual = std::max(worst_residual, w.orthogonality_residual());
    const double bound = std::pow(static_cast<double>(q), 1.5);
    const SupEstimate e = sup_lower(lift(w.D, table), SupBudget{}, split_seed(kSeed, q), bound);
    worst_sup = std::max(worst_sup, e.lower / bound);
    const double upper = witness_upper_Lm(w.D, 2, w.analytic_sup_bound).upper;
    const double exact = std::pow(static_cast<double>(q), -0.25);
    worst_bound_ulps = std::max(worst_bound_ulps, std::abs(upper - exact) / (exact * 0x1.0p-52));
  }
  o.expect(invariants, "l1 = q^2, |a_nk| = 1, a_nk = e^{2 pi i nk/q} on p_{n+1} p_{q+k+1}");
  o.expect(worst_residual <= 1e-9, "orthogonality residual " + fmt("%.2e", worst_residual) + " <= 1e-9");
  o.expect(worst_sup <= 1.0 + 1e-9, "max sampled sup / q^{3/2} = " + fmt("%.6f", worst_sup));
  o.expect(worst_bound_ulps <= 4.0, "witness bound = q^{-1/4} within " + fmt("%.0f", worst_bound_ulps) + " ulp");
  return o;
}

Outcome asymptotic_order() {
  Outcome o;
  const AsymptoticFit fit = asymptotic_fit(log_grid(1e2, 1e7, 11));
  o.expect(fit.x.size() == 11, "11 log-spaced points on [1e2, 1e7]");
  o.expect(fit.band() <= 10.0, "band max/min = " + fmt("%.4f", fit.band()) + " <= 10");
  // x = 10^4: q = floor(pi(100)/2), upper q^{-1/4}
  const double q = static_cast<double>(pi_by_trial(100) / 2);
  const double oracle = std::pow(q, -0.25) / (std::pow(std::log(1e4), 0.25) * std::pow(1e4, -0.125));
  const double measured = fit.ratio[4];
  o.expect(std::abs(measured - oracle) <= 1e-12, "ratio at 1e4 " + fmt("%.6f", measured) + " matches oracle");
  o.expect(std::abs(measured - 0.975) <= 1e-2, "ratio at 1e4 within 1e-2 of 0.975");
  return o;
}

Outcome reduction_sandwich() {
  Outcome o;
  const PrimeTable table(1000);
  const SearchBudget budget;
  for (const char* spec : {"range:1..12", "primes<=30", "powers-of-2<=64"}) {
    const SandwichResult r = sandwich_check(app::parse_index_set(spec), budget, kSeed, table, 0.05);
    o.expect(r.pass, std::string(spec) + ": L in [" + fmt("%.4f", r.L.bound.lower) + ", " +
                         fmt("%.4f", r.L.bound.upper) + "], min L_m in [" + fmt("%.4f", r.min_Lm_lower) + ", " +
                         fmt("%.4f", r.min_Lm_upper) + "]");
  }
  return o;
}

Outcome kernels() {
  Outcome o;
  const PrimeTable table(1000);
  const IndexSet J = enumerate_range(100);
  bool commute = true;
  for (std::uint32_t n = 1; n <= 26; ++n) {
    for (std::uint32_t m = 0; m <= 5; ++m) {
      commute = commute && kernel_hom(kernel_dim(J, n, table), m) == kernel_dim(kernel_hom(J, m), n, table);
    }
  }
  o.expect(commute, "J(n)[m] = J[m](n) on {1..100}, n <= 26, m <= 5");
  const KernelSeries s = kernel_monotonicity(enumerate_range(30), 10, SearchBudget{}, kSeed, table, 0.01);
  std::string series;
  for (const double u : s.upper) series += fmt(" %.4f", u);
  o.expect(s.non_increasing, "series on {1..30}:" + series);
  return o;
}

Outcome blocks() {
  Outcome o;
  const PrimeTable table(1000);
  const SearchBudget budget;
  std::vector<std::vector<std::uint64_t>> singletons;
  for (const std::uint64_t p : first_primes(10)) singletons.push_back({p});
  const IndexSet J = block_index_set(singletons, 30);
  const IndexSet powers(std::vector<std::uint64_t>{1, 2, 4, 8, 16}, "powers of 2");
  const KEstimate ref = heuristic_L(powers, budget, kSeed, table);
  const KEstimate est = heuristic_L(J, budget, kSeed, table);
  const double gap = std::abs(est.bound.upper - ref.bound.upper);
  o.expect(gap <= 0.05, "blocks " + fmt("%.4f", est.bound.upper) + " vs powers of 2 " + fmt("%.4f", ref.bound.upper) +
                            ", gap " + fmt("%.4f", gap));
  return o;
}

Outcome caratheodory() {
  Outcome o;
  Rng rng(split_seed(kSeed, 8));
  std::uint64_t checks = 0;
  double worst = -1.0;
  for (int i = 0; i < 100; ++i) {
    const auto d = 1 + static_cast<std::uint32_t>(rng.uniform() * 4.0);
    PolydiscPolynomial P(d);
    for (int t = 0; t < 12; ++t) {
      std::vector<MultiIndex::Entry> pairs;
      const auto deg = static_cast<std::uint32_t>(rng.uniform() * 5.0);
      for (std::uint32_t k = 0; k < deg; ++k) pairs.emplace_back(1 + static_cast<std::uint32_t>(rng.uniform() * d), 1);
      const double re = rng.normal();
      const double im = rng.normal();
      P.add(MultiIndex::from_pairs(pairs), Complex(re, im));
    }
    P = P.scaled(Complex(1.0 / P.l1_norm()));
    std::vector<Complex> z0(d);
    for (auto& z : z0) z = std::polar(0.9, rng.angle());
    for (std::uint32_t m = 1; m <= P.max_degree(); ++m) {
      // direct evaluation of the m-homogeneous part
      Complex fm{};
      for (const auto& [alpha, c] : P.terms()) {
        if (alpha.degree() != m) continue;
        Complex term = c;
        for (const auto& [coord, e] : alpha.entries()) term *= std::pow(z0[coord - 1], static_cast<int>(e));
        fm += term;
      }
      const double rhs = 2.0 * (1.0 - std::abs(P.coefficient(MultiIndex{})));
      const CaratheodoryResult r = caratheodory_check(P, z0, m);
      worst = std::max(worst, std::abs(fm) - rhs);
      o.pass = o.pass && std::abs(r.lhs - std::abs(fm)) <= 1e-12 && r.pass && std::abs(fm) <= rhs + 1e-9;
      ++checks;
    }
  }
  o.expect(o.pass, std::to_string(checks) + " checks on 100 polynomials, max |f_m(z0)| - 2(1-|c0|) = " +
                       fmt("%.4f", worst));
  return o;
}

Outcome ratio_probes() {
  Outcome o;
  app::RunConfig cfg;
  cfg.seed = kSeed;
  const app::SuiteResult r = app::run_suite("ratios", cfg);
  for (const auto& c : r.report["checks"]) {
    o.expect(c["pass"].get<bool>(), c["name"].get<std::string>() + ": max " +
                                        fmt("%.4f", c["report"]["max_ratio"].get<double>()) + " <= budget " +
                                        fmt("%g", c["budget"].get<double>()));
  }
  o.pass = o.pass && r.pass;
  return o;
}

Outcome numeric_substrate() {
  Outcome o;
  const PrimeTable table(10'000'000);
  bool round_trip = true;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    const MultiIndex alpha = bohr_decode(n, table);
    round_trip = round_trip && bohr_encode(alpha, table) == n && alpha.degree() == big_omega(n);
  }
  o.expect(round_trip, "encode(decode(n)) = n and |decode(n)| = Omega(n) for n <= 1e6");

  double worst = 0.0;
  for (std::uint32_t m = 2; m <= 6; ++m) {
    const double alpha = (m - 1.0) / m;
    for (const double x : {1e3, 1e4, 1e5, 1e6, 1e7}) {
      const double ratio = prime_power_sum(alpha, x, table) * (1.0 - alpha) * std::log(x) / std::pow(x, 1.0 - alpha);
      worst = std::max(worst, ratio);
    }
  }
  o.expect(worst <= 4.0, "prime-sum ratio max " + fmt("%.4f", worst) + " <= 4");

  bool decreasing = true;
  double previous = std::sqrt(std::log(8.0)) / std::pow(8.0, 0.25);
  for (std::uint64_t n = 9; n <= 1'000'000; ++n) {
    const double w = std::sqrt(std::log(static_cast<double>(n))) / std::pow(static_cast<double>(n), 0.25);
    decreasing = decreasing && w < previous && std::abs(bcq_weight(n, 2) - w) <= 1e-15 * w;
    previous = w;
  }
  o.expect(decreasing, "sqrt(log n)/n^{1/4} strictly decreasing on [8, 1e6]");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Bohr 1/3: Moebius radii and one-variable search", 60, bohr_one_third},
      {2, "L_1 exactness for 1-homogeneous Dirichlet polynomials", 30, l1_exactness},
      {3, "DFT witness chain", 120, dft_chain},
      {4, "asymptotic order of the L(x) upper bound", 60, asymptotic_order},
      {5, "reduction sandwich", 300, reduction_sandwich},
      {6, "kernel identities and monotonicity", 300, kernels},
      {7, "singleton block construction", 300, blocks},
      {8, "Caratheodory bound", 30, caratheodory},
      {9, "ratio probes within frozen budgets", 300, ratio_probes},
      {10, "numeric substrate", 60, numeric_substrate},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("%s criterion %2d: %s (%.1fs, limit %.0fs)\n", pass ? "PASS" : "FAIL", c.id, c.title, seconds,
                c.limit_seconds);
    for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
    if (!in_time) std::printf("        FAIL runtime limit exceeded\n");
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
