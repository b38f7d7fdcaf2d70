#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbr/polyspace.hpp"
#include "dbr/supnorm.hpp"

namespace dbr {

/// An interval [lower, upper] for a Bohr-type radius. certified_* says
/// whether the endpoint follows from an exact identity or an evaluated
/// witness (true) or from a heuristic search (false).
struct RadiusBound {
  double lower = 0.0;
  double upper = 1.0;
  bool certified_lower = false;
  bool certified_upper = false;
  std::string method;
  std::vector<std::string> provenance;
  /// Search stopped early because the evaluation budget ran out.
  bool partial = false;
};

struct RatioReport {
  std::uint64_t instances = 0;
  double max_ratio = 0.0;
  std::vector<std::pair<double, double>> series;  // (size, ratio)

  void add(double size, double ratio);
};

// --- certified upper bounds ------------------------------------------------

/// min(1, (sup_upper / l1(D))^{1/m}) for an m-homogeneous witness D.
RadiusBound witness_upper_Lm(const DirichletPolynomial& D, std::uint32_t m, double sup_upper);

/// Upper bound on L(x): the DFT witness bound q^{-1/4} when x >= 49, else 1.
RadiusBound upper_bound_Lx(double x);

/// (log x)^{1/4} x^{-1/8}
double asymptotic_target(double x);

struct AsymptoticFit {
  std::vector<double> x;
  std::vector<std::uint32_t> q;
  std::vector<double> upper;
  std::vector<double> target;
  std::vector<double> ratio;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double band() const { return max_ratio / min_ratio; }
};

AsymptoticFit asymptotic_fit(const std::vector<double>& x_grid);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::uint32_t points);

// --- heuristic Bohr radius search -----------------------------------------

struct SearchBudget {
  double r_tolerance = 1e-3;
  std::uint32_t restarts = 32;
  std::uint32_t descent_steps = 200;
  /// Random torus points in the discretized objective (grids are used for
  /// one active variable).
  std::uint32_t sample_points = 1024;
  /// Rounds of "verify, add the witness point, re-descend" per candidate.
  std::uint32_t exchange_rounds = 6;
  /// Total descent-step cap over the whole search; exceeding it flags a partial result.
  std::uint64_t max_descent_steps = 50'000'000;
  SupBudget verify{16, 8192, 50, std::uint64_t{1} << 16, 8};
};

/// f with spectrum in Lambda whose weighted coefficient sum at r exceeds its
/// (estimated) sup norm.
struct Violator {
  PolydiscPolynomial f{1};
  double r = 0.0;
  double weighted_l1 = 0.0;  // sum |c_alpha| r^{|alpha|}
  double sup_lower = 0.0;
  /// r at which sum |c_alpha| r^{|alpha|} equals sup_lower.
  double critical_r = 0.0;
};

struct KEstimate {
  RadiusBound bound;
  std::optional<Violator> best;
  std::uint32_t bisection_steps = 0;
  std::uint64_t descent_steps_used = 0;
};

/// Searches for f with spectrum in Lambda and sum |c_alpha| r^{|alpha|} >
/// sup|f| at the given r. Warm starts are tried before random restarts.
std::optional<Violator> find_violator(const std::vector<MultiIndex>& lambda, double r, const SearchBudget& budget,
                                      std::uint64_t seed,
                                      const std::vector<PolydiscPolynomial>& warm_starts = {});

/// Bisection on r for K(Lambda). upper = smallest critical radius of a found
/// violator, lower = largest r at which none was found; both heuristic.
KEstimate heuristic_K(const std::vector<MultiIndex>& lambda, const SearchBudget& budget, std::uint64_t seed,
                      const std::vector<PolydiscPolynomial>& warm_starts = {});

KEstimate heuristic_L(const IndexSet& J, const SearchBudget& budget, std::uint64_t seed, const PrimeTable& table,
                      const std::vector<PolydiscPolynomial>& warm_starts = {});

struct SandwichResult {
  KEstimate L;
  std::vector<std::pair<std::uint32_t, KEstimate>> Lm;  // (m, estimate of L(J[m]))
  double min_Lm_upper = 1.0;
  double min_Lm_lower = 1.0;
  double tolerance = 0.05;
  bool pass = false;
};

/// (1/3) inf_m L(J[m]) <= L(J) <= inf_m L(J[m]), checked on heuristic estimates.
SandwichResult sandwich_check(const IndexSet& J, const SearchBudget& budget, std::uint64_t seed,
                              const PrimeTable& table, double tolerance = 0.05);

struct KernelSeries {
  std::vector<std::uint32_t> n;
  std::vector<std::size_t> sizes;
  std::vector<double> upper;
  std::vector<double> lower;
  double tolerance = 0.01;
  bool non_increasing = false;
};

/// Heuristic upper estimates of L(J(n)) for n = 1..n_max, each search warm
/// started with the previous kernel's best violator.
KernelSeries kernel_monotonicity(const IndexSet& J, std::uint32_t n_max, const SearchBudget& budget,
                                 std::uint64_t seed, const PrimeTable& table, double tolerance = 0.01);

// --- ratio probes ------------------------------------------------------------

/// (log n)^{(m-1)/2} / n^{(m-1)/(2m)}
double bcq_weight(std::uint64_t n, std::uint32_t m);

/// e^{(1/sqrt2 - eps) sqrt(log n * max(0, log log n))} / sqrt(n)
double monster_weight(std::uint64_t n, double epsilon);

struct RatioProbe {
  double numerator = 0.0;
  double denominator = 0.0;  // certified sup lower estimate
  double ratio = 0.0;
};

RatioProbe bcq_ratio(const DirichletPolynomial& D, std::uint32_t m, const SupBudget& budget, std::uint64_t seed,
                     const PrimeTable& table);

/// Sum over the largest index j_m of the l2 norm of the coefficients in that group.
double fred2_numerator(const PolydiscPolynomial& P, std::uint32_t m);
RatioProbe fred2_ratio(const PolydiscPolynomial& P, std::uint32_t m, const SupBudget& budget, std::uint64_t seed);

RatioProbe monster_ratio(const DirichletPolynomial& D, double epsilon, const SupBudget& budget, std::uint64_t seed,
                         const PrimeTable& table);

}  // namespace dbr
