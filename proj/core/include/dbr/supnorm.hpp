#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dbr/polyspace.hpp"

namespace dbr {

/// Angles theta_j in [0, 2pi); the point (e^{i theta_1}, ..., e^{i theta_d}).
struct TorusPoint {
  std::vector<double> angles;
};

enum class SamplingMode { automatic, grid, random };

struct SupBudget {
  std::uint32_t grid_per_dim = 16;
  /// Rounded up to a multiple of kSampleBatch.
  std::uint64_t random_samples = 100000;
  std::uint32_t ascent_iters = 50;
  /// Automatic mode uses the grid only for <= 6 active variables and at most
  /// this many grid points.
  std::uint64_t max_grid_points = std::uint64_t{1} << 20;
  /// Grid points (best first) used as ascent starts.
  std::uint32_t grid_starts = 8;
  SamplingMode mode = SamplingMode::automatic;
  /// t-line cross-check for Dirichlet polynomials: t_k = k * tline_span / tline_samples.
  std::uint32_t tline_samples = 2048;
  double tline_span = 1000.0;
};

inline constexpr std::uint64_t kSampleBatch = 1024;

/// lower is certified: |P(witness)| == lower. upper is the l1 norm or a
/// caller-supplied analytic bound, whichever is smaller.
struct SupEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  std::uint64_t samples_used = 0;
  std::uint64_t seed = 0;
  TorusPoint witness;
};

Complex eval(const PolydiscPolynomial& P, const TorusPoint& z);

/// Evaluation at an arbitrary point of C^d (used for interior points).
Complex eval_at(const PolydiscPolynomial& P, std::span<const Complex> z);

/// Certified lower estimate of sup_{T^d} |P| by grid/random sampling refined
/// with cyclic coordinate phase ascent. Deterministic for a fixed seed and
/// independent of the thread count.
SupEstimate sup_lower(const PolydiscPolynomial& P, const SupBudget& budget, std::uint64_t seed,
                      double analytic_upper = std::numeric_limits<double>::infinity());

struct DirichletSup {
  SupEstimate estimate;
  /// max over the t-grid of |sum a_n n^{-it}|; a lower bound for the same sup.
  double tline_max = 0.0;
  double tline_argmax = 0.0;
};

DirichletSup dirichlet_sup(const DirichletPolynomial& D, const SupBudget& budget, std::uint64_t seed,
                           const PrimeTable& table,
                           double analytic_upper = std::numeric_limits<double>::infinity());

/// (1/K) sum_{j<K} P(omega_j z) omega_j^{-m}, carried out on the coefficients.
/// Requires K > deg P; otherwise distinct degrees alias onto m.
PolydiscPolynomial hom_project(const PolydiscPolynomial& P, std::uint32_t m, std::uint32_t K);

struct CaratheodoryResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// |f_m(z0)| <= 2 (1 - |c_0(f)|) for ||f|| <= 1 and z0 in the open polydisc.
/// sup_upper must be a certified bound on ||P||; the l1 norm is used by default.
CaratheodoryResult caratheodory_check(const PolydiscPolynomial& P, std::span<const Complex> z0, std::uint32_t m,
                                      double sup_upper = -1.0);

}  // namespace dbr
