#include <algorithm>
#include <cmath>

#include "dbr/app.hpp"
#include "dbr/budgets.hpp"
#include "dbr/error.hpp"
#include "dbr/rng.hpp"
#include "dbr/serialize.hpp"
#include "dbr/witnesses.hpp"

namespace dbr::app {

namespace {

using nlohmann::json;

struct Checks {
  json list = json::array();
  bool pass = true;

  void add(std::string name, bool ok, json values) {
    values["name"] = std::move(name);
    values["pass"] = ok;
    list.push_back(std::move(values));
    pass = pass && ok;
  }
};

json estimate_json(const KEstimate& e) {
  json j = to_json(e.bound);
  j["bisection_steps"] = e.bisection_steps;
  j["descent_steps"] = e.descent_steps_used;
  return j;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t x) {
  const PrimeTable table(std::max<std::uint64_t>(x, 2));
  return {table.primes().begin(), table.primes().end()};
}

void suite_sandwich(const RunConfig& cfg, Checks& checks) {
  const PrimeTable table(1000);
  constexpr double kTolerance = 0.05;
  for (const char* spec : {"range:1..12", "primes<=30", "powers-of-2<=64"}) {
    const IndexSet J = parse_index_set(spec);
    const SandwichResult r = sandwich_check(J, cfg.search, cfg.seed, table, kTolerance);
    json lm = json::array();
    for (const auto& [m, e] : r.Lm) lm.push_back({{"m", m}, {"estimate", estimate_json(e)}});
    checks.add(std::string("sandwich ") + spec, r.pass,
               {{"L", estimate_json(r.L)},
                {"min_Lm_upper", r.min_Lm_upper},
                {"min_Lm_lower", r.min_Lm_lower},
                {"tolerance", kTolerance},
                {"Lm", std::move(lm)}});
  }
}

void suite_kernels(const RunConfig& cfg, Checks& checks) {
  const PrimeTable table(1000);
  const IndexSet J100 = enumerate_range(100);
  std::uint64_t compared = 0;
  bool commute = true;
  for (std::uint32_t n = 1; n <= 26; ++n) {
    for (std::uint32_t m = 0; m <= 6; ++m) {
      const IndexSet a = kernel_hom(kernel_dim(J100, n, table), m);
      const IndexSet b = kernel_dim(kernel_hom(J100, m), n, table);
      commute = commute && a == b;
      ++compared;
    }
  }
  checks.add("kernel commutation on range:1..100", commute,
             {{"pairs", compared}, {"n_max", 26}, {"m_max", 6}});

  constexpr double kTolerance = 0.01;
  const KernelSeries s = kernel_monotonicity(enumerate_range(30), 10, cfg.search, cfg.seed, table, kTolerance);
  checks.add("kernel series non-increasing on range:1..30", s.non_increasing,
             {{"n", s.n}, {"sizes", s.sizes}, {"upper", s.upper}, {"lower", s.lower}, {"tolerance", kTolerance}});
}

void suite_blocks(const RunConfig& cfg, Checks& checks) {
  const PrimeTable table(1000);
  constexpr double kTolerance = 0.05;
  std::vector<std::vector<std::uint64_t>> singletons;
  for (const std::uint64_t p : primes_upto(30)) singletons.push_back({p});
  const IndexSet J = block_index_set(singletons, 30);
  const IndexSet powers = kernel_dim(J, 1, table);

  const KEstimate reference = heuristic_L(powers, cfg.search, cfg.seed, table);
  const KEstimate blocks = heuristic_L(J, cfg.search, cfg.seed, table, reference.best ? std::vector{reference.best->f}
                                                                                       : std::vector<PolydiscPolynomial>{});
  const double gap = std::abs(blocks.bound.upper - reference.bound.upper);
  checks.add("singleton blocks <= 30 vs powers of 2", gap <= kTolerance,
             {{"blocks", estimate_json(blocks)},
              {"powers_of_2", estimate_json(reference)},
              {"gap", gap},
              {"tolerance", kTolerance}});

  const KernelSeries s = kernel_monotonicity(J, 10, cfg.search, cfg.seed, table);
  double worst = 0.0;
  for (const double u : s.upper) worst = std::max(worst, std::abs(u - reference.bound.upper));
  checks.add("every kernel of the block set vs powers of 2", worst <= kTolerance,
             {{"n", s.n}, {"upper", s.upper}, {"max_gap", worst}, {"tolerance", kTolerance}});
}

// Random polynomial in up to 4 variables of degree <= 4, normalized so that
// its l1 norm (a certified sup bound) is 1.
PolydiscPolynomial random_normalized(Rng& rng) {
  const auto d = static_cast<std::uint32_t>(1 + rng.uniform() * 4.0);
  PolydiscPolynomial P(d);
  const auto terms = static_cast<std::uint32_t>(2 + rng.uniform() * 10.0);
  for (std::uint32_t t = 0; t < terms; ++t) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    const auto deg = static_cast<std::uint32_t>(rng.uniform() * 5.0);
    for (std::uint32_t k = 0; k < deg; ++k) pairs.emplace_back(1 + static_cast<std::uint32_t>(rng.uniform() * d), 1);
    const double re = rng.normal();
    const double im = rng.normal();
    P.add(MultiIndex::from_pairs(pairs), Complex(re, im));
  }
  const double l1 = P.l1_norm();
  return l1 > 0.0 ? P.scaled(Complex(1.0 / l1)) : P;
}

void suite_caratheodory(const RunConfig& cfg, Checks& checks) {
  constexpr std::uint32_t kPolynomials = 100;
  constexpr double kRadius = 0.9;
  Rng rng(split_seed(cfg.seed, 0xCA7));
  std::uint64_t evaluated = 0;
  std::uint64_t failed = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < kPolynomials; ++i) {
    const PolydiscPolynomial P = random_normalized(rng);
    std::vector<Complex> z0(P.dimension());
    for (auto& z : z0) z = std::polar(kRadius, rng.angle());
    for (std::uint32_t m = 1; m <= P.max_degree(); ++m) {
      const CaratheodoryResult r = caratheodory_check(P, z0, m);
      worst_margin = std::max(worst_margin, r.lhs - r.rhs);
      ++evaluated;
      if (!r.pass) ++failed;
    }
  }
  checks.add("|f_m(z0)| <= 2(1 - |c_0|)", failed == 0,
             {{"polynomials", kPolynomials},
              {"radius", kRadius},
              {"evaluations", evaluated},
              {"failures", failed},
              {"max_lhs_minus_rhs", worst_margin},
              {"tolerance", 1e-9}});
}

void suite_ratios(const RunConfig& cfg, Checks& checks) {
  const PrimeTable table(20000);
  const SupBudget& sup = budgets::kProbeSup;
  for (const std::uint32_t m : budgets::kProbeDegrees) {
    RatioReport bcq;
    RatioReport monster;
    for (const double x : budgets::kDirichletLengths) {
      for (std::uint32_t s = 0; s < budgets::kDirichletSeeds; ++s) {
        const DirichletPolynomial D = steinhaus_dirichlet(x, m, split_seed(cfg.seed, s));
        bcq.add(x, bcq_ratio(D, m, sup, s, table).ratio);
        monster.add(x, monster_ratio(D, budgets::kMonsterEpsilon, sup, s, table).ratio);
      }
    }
    checks.add("bcq ratio m=" + std::to_string(m), bcq.max_ratio <= budgets::bcq_budget(m),
               {{"report", to_json(bcq)}, {"budget", budgets::bcq_budget(m)}});
    checks.add("monster ratio m=" + std::to_string(m), monster.max_ratio <= budgets::kMonsterBudget,
               {{"report", to_json(monster)}, {"budget", budgets::kMonsterBudget}, {"epsilon", budgets::kMonsterEpsilon}});

    RatioReport fred2;
    for (std::uint32_t n = budgets::kPolydiscMinVars; n <= budgets::kPolydiscMaxVars; ++n) {
      for (std::uint32_t s = 0; s < budgets::kPolydiscSeeds; ++s) {
        const PolydiscPolynomial P = steinhaus_witness(n, m, split_seed(cfg.seed, s));
        fred2.add(n, fred2_ratio(P, m, sup, s).ratio);
      }
    }
    checks.add("fred2 ratio m=" + std::to_string(m), fred2.max_ratio <= budgets::fred2_budget(m),
               {{"report", to_json(fred2)}, {"budget", budgets::fred2_budget(m)}});
  }
}

void suite_bohr13(const RunConfig& cfg, Checks& checks) {
  constexpr double kClosedFormTolerance = 1e-5;
  double previous = 1.0;
  for (const double a : {0.9, 0.99, 0.999}) {
    const MoebiusWitness w = moebius_witness(a, 200);
    const double err = std::abs(w.certified_r - w.closed_form_r);
    const bool ok = err <= kClosedFormTolerance && w.certified_r < previous && w.certified_r >= 1.0 / 3.0 - kClosedFormTolerance;
    previous = w.certified_r;
    checks.add("moebius a=" + json(a).dump(), ok,
               {{"certified_r", w.certified_r},
                {"closed_form_r", w.closed_form_r},
                {"truncated_r", w.truncated_r},
                {"error", err},
                {"tolerance", kClosedFormTolerance}});
  }

  std::vector<MultiIndex> lambda;
  for (std::uint32_t k = 0; k <= 20; ++k) lambda.push_back(MultiIndex::unit(1, k));
  const KEstimate e = heuristic_K(lambda, cfg.search, cfg.seed);
  checks.add("one variable, degree <= 20: upper <= 0.36", e.bound.upper <= 0.36, {{"estimate", estimate_json(e)}});
  const auto v = find_violator(lambda, 0.30, cfg.search, cfg.seed);
  checks.add("one variable, degree <= 20: no violator at r = 0.30", !v,
             {{"r", 0.30}, {"violator_critical_r", v ? json(v->critical_r) : json(nullptr)}});
}

}  // namespace

SuiteResult run_suite(std::string_view name, const RunConfig& config) {
  if (name == "all") {
    SuiteResult all{true, {{"suite", "all"}, {"seed", config.seed}, {"suites", json::array()}}};
    for (const auto& s : kSuites) {
      SuiteResult r = run_suite(s, config);
      all.pass = all.pass && r.pass;
      all.report["suites"].push_back(std::move(r.report));
    }
    all.report["pass"] = all.pass;
    return all;
  }

  Checks checks;
  if (name == "sandwich") {
    suite_sandwich(config, checks);
  } else if (name == "kernels") {
    suite_kernels(config, checks);
  } else if (name == "blocks") {
    suite_blocks(config, checks);
  } else if (name == "caratheodory") {
    suite_caratheodory(config, checks);
  } else if (name == "ratios") {
    suite_ratios(config, checks);
  } else if (name == "bohr13") {
    suite_bohr13(config, checks);
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown suite '" + std::string(name) + "'");
  }
  SuiteResult out;
  out.pass = checks.pass;
  out.report = {{"suite", name}, {"seed", config.seed}, {"pass", checks.pass}, {"checks", std::move(checks.list)}};
  return out;
}

}  // namespace dbr::app
