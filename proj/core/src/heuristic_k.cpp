// Heuristic search for Bohr radii K(Lambda).
//
// For fixed r the search minimizes sup|f| / sum |c_alpha| r^{|alpha|} over
// coefficient vectors with spectrum in Lambda. The sup is replaced by a
// p-mean over a fixed set S of torus points (p grows during the descent), so
// the objective is smooth away from c_alpha = 0. Candidates whose discrete
// ratio drops below 1 are re-checked with sup_lower; if the full estimate
// disagrees, its witness point joins S and the descent continues (exchange).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dbr/error.hpp"
#include "dbr/parallel.hpp"
#include "dbr/radius.hpp"
#include "dbr/rng.hpp"
#include "dbr/witnesses.hpp"

namespace dbr {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr std::uint32_t kMaxSearchDegree = 32;
constexpr std::uint64_t kSampleStream = 0x5A3D1E;
constexpr std::uint64_t kVerifyStream = 0x7E21F1;
constexpr std::uint64_t kRestartStream = 0x2E57A2;

struct Problem {
  std::vector<MultiIndex> lambda;
  std::vector<std::uint32_t> active;  // original coordinates
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> local;  // (local var, exp) per monomial
  std::vector<std::uint32_t> degree;
  std::uint32_t dimension = 0;
  MatrixXcd samples;  // rows: torus points, columns: monomials

  std::size_t vars() const { return active.size(); }
  Eigen::Index terms() const { return static_cast<Eigen::Index>(lambda.size()); }

  void add_point(std::span<const double> theta) {
    const Eigen::Index row = samples.rows();
    samples.conservativeResize(row + 1, terms());
    for (Eigen::Index a = 0; a < terms(); ++a) {
      double phase = 0.0;
      for (const auto& [v, e] : local[a]) phase += static_cast<double>(e) * theta[v];
      samples(row, a) = std::polar(1.0, phase);
    }
  }

  PolydiscPolynomial to_polynomial(const VectorXcd& c) const {
    PolydiscPolynomial P(dimension);
    for (Eigen::Index a = 0; a < terms(); ++a) {
      if (c[a] != Complex{}) P.set(lambda[a], c[a]);
    }
    return P;
  }

  VectorXcd from_polynomial(const PolydiscPolynomial& P) const {
    VectorXcd c = VectorXcd::Zero(terms());
    for (Eigen::Index a = 0; a < terms(); ++a) c[a] = P.coefficient(lambda[a]);
    return c;
  }

  VectorXd weights(double r) const {
    VectorXd w(terms());
    for (Eigen::Index a = 0; a < terms(); ++a) w[a] = std::pow(r, static_cast<double>(degree[a]));
    return w;
  }
};

Problem make_problem(const std::vector<MultiIndex>& lambda_in, const SearchBudget& budget, std::uint64_t seed) {
  Problem pb;
  pb.lambda = lambda_in;
  std::sort(pb.lambda.begin(), pb.lambda.end());
  pb.lambda.erase(std::unique(pb.lambda.begin(), pb.lambda.end()), pb.lambda.end());
  for (const auto& alpha : pb.lambda) {
    for (const auto& [coord, e] : alpha.entries()) pb.active.push_back(coord);
    pb.dimension = std::max(pb.dimension, alpha.max_coordinate());
  }
  pb.dimension = std::max<std::uint32_t>(pb.dimension, 1);
  std::sort(pb.active.begin(), pb.active.end());
  pb.active.erase(std::unique(pb.active.begin(), pb.active.end()), pb.active.end());

  std::vector<std::uint32_t> max_exp(pb.vars(), 0);
  for (const auto& alpha : pb.lambda) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> loc;
    for (const auto& [coord, e] : alpha.entries()) {
      const auto v = static_cast<std::uint32_t>(std::lower_bound(pb.active.begin(), pb.active.end(), coord) -
                                                pb.active.begin());
      loc.emplace_back(v, e);
      max_exp[v] = std::max(max_exp[v], e);
    }
    pb.local.push_back(std::move(loc));
    pb.degree.push_back(alpha.degree());
  }

  pb.samples.resize(0, pb.terms());
  if (pb.vars() == 1) {
    const std::uint32_t grid = std::clamp<std::uint32_t>(16 * (max_exp[0] + 1), 64, 4096);
    for (std::uint32_t s = 0; s < grid; ++s) {
      const double theta = 2.0 * std::numbers::pi * s / grid;
      pb.add_point(std::span<const double>(&theta, 1));
    }
  } else if (pb.vars() > 1) {
    Rng rng(split_seed(seed, kSampleStream));
    std::vector<double> theta(pb.vars());
    pb.samples.resize(budget.sample_points, pb.terms());
    for (std::uint32_t s = 0; s < budget.sample_points; ++s) {
      for (auto& th : theta) th = rng.angle();
      for (Eigen::Index a = 0; a < pb.terms(); ++a) {
        double phase = 0.0;
        for (const auto& [v, e] : pb.local[a]) phase += static_cast<double>(e) * theta[v];
        pb.samples(s, a) = std::polar(1.0, phase);
      }
    }
  }
  return pb;
}

struct Objective {
  double value = 0.0;  // p-mean ratio
  double max_ratio = 0.0;
};

// R_p(c) = (mean_s |f_s|^p)^{1/p} / sum_a w_a |c_a|, with optional gradient
// with respect to conj(c). p is a power of two >= 4.
Objective evaluate(const MatrixXcd& M, const VectorXd& w, const VectorXcd& c, int p, VectorXcd* grad) {
  const VectorXcd f = M * c;
  const Eigen::ArrayXd mod2 = f.cwiseAbs2().array();
  const double fmax2 = mod2.maxCoeff();
  const double norm = (w.array() * c.cwiseAbs().array()).sum();
  Objective obj;
  if (fmax2 <= 0.0 || norm <= 0.0) {
    if (grad) grad->setZero(c.size());
    return obj;
  }
  const double fmax = std::sqrt(fmax2);
  // up = u^(p-2) with u = |f| / fmax, by repeated squaring of u^2
  const Eigen::ArrayXd u2 = mod2 / fmax2;
  Eigen::ArrayXd up = u2;
  Eigen::ArrayXd square = u2.square();
  for (int have = 4; have < p; have *= 2) {
    up *= square;
    square = square.square();
  }
  const double mean = (up * u2).mean();
  const double phi = fmax * std::pow(mean, 1.0 / p);
  obj.value = phi / norm;
  obj.max_ratio = fmax / norm;
  if (grad) {
    // d phi / d conj(c) = (1/2) phi^{1-p} mean(|f|^{p-2} f conj(z^alpha))
    const VectorXcd weighted = f.cwiseProduct(up.matrix().cast<Complex>());
    const double scale = 0.5 * std::pow(phi / fmax, 1.0 - p) / (fmax * static_cast<double>(M.rows()));
    const VectorXcd dphi = (M.adjoint() * weighted) * scale;
    VectorXcd dnorm(c.size());
    for (Eigen::Index a = 0; a < c.size(); ++a) {
      const double m = std::abs(c[a]);
      dnorm[a] = m > 0.0 ? Complex(0.5 * w[a] / m) * c[a] : Complex{};
    }
    *grad = dphi / norm - dnorm * (phi / (norm * norm));
  }
  return obj;
}

void normalize(VectorXcd& c, const VectorXd& w) {
  const double norm = (w.array() * c.cwiseAbs().array()).sum();
  if (norm > 0.0) c /= norm;
}

struct DescentResult {
  VectorXcd c;
  double max_ratio = 0.0;
  std::uint32_t steps = 0;
};

DescentResult descend(const MatrixXcd& M, const VectorXd& w, VectorXcd c, std::uint32_t steps) {
  // p doubles through 8, 16, ..., 512 in equal stages
  constexpr int kStages = 7;
  normalize(c, w);
  double eta = 0.05;
  VectorXcd grad(c.size());
  DescentResult out;
  for (std::uint32_t t = 0; t < steps; ++t) {
    const int stage = std::min<int>(kStages - 1, static_cast<int>(t * kStages / std::max<std::uint32_t>(steps, 1)));
    const int p = 8 << stage;
    const Objective here = evaluate(M, w, c, p, &grad);
    ++out.steps;
    const double gnorm = grad.norm();
    if (!(gnorm > 0.0)) break;
    const double cnorm = c.norm();
    bool accepted = false;
    for (int tries = 0; tries < 12; ++tries) {
      VectorXcd trial = c - grad * (eta * cnorm / gnorm);
      normalize(trial, w);
      if (evaluate(M, w, trial, p, nullptr).value < here.value) {
        c = std::move(trial);
        eta = std::min(eta * 1.5, 0.5);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted && eta < 1e-10) break;
    if (!accepted) eta = std::max(eta, 1e-6);
  }
  out.max_ratio = evaluate(M, w, c, 4, nullptr).max_ratio;
  out.c = std::move(c);
  return out;
}

VectorXcd random_start(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  VectorXcd c(n);
  for (Eigen::Index a = 0; a < n; ++a) c[a] = Complex(rng.normal(), rng.normal());
  return c;
}

struct SearchState {
  SearchState(Problem problem, const SearchBudget& b, std::uint64_t s) : pb(std::move(problem)), budget(b), seed(s) {}

  Problem pb;
  SearchBudget budget;
  std::uint64_t seed = 0;
  std::uint64_t steps_used = 0;
  bool exhausted = false;
  std::vector<VectorXcd> pool;  // best coefficient vectors seen so far, best first
};

std::vector<double> local_angles(const Problem& pb, const TorusPoint& witness) {
  std::vector<double> theta(pb.vars());
  for (std::size_t v = 0; v < pb.vars(); ++v) theta[v] = witness.angles[pb.active[v] - 1];
  return theta;
}

std::optional<Violator> verify(SearchState& st, VectorXcd& c, double r) {
  const VectorXd w = st.pb.weights(r);
  for (std::uint32_t round = 0; round <= st.budget.exchange_rounds; ++round) {
    normalize(c, w);
    // drop numerically dead coefficients so the polynomial is clean
    const double cmax = c.cwiseAbs().maxCoeff();
    for (Eigen::Index a = 0; a < c.size(); ++a) {
      if (std::abs(c[a]) < 1e-14 * cmax) c[a] = Complex{};
    }
    const PolydiscPolynomial f = st.pb.to_polynomial(c);
    const SupEstimate est = sup_lower(f, st.budget.verify, split_seed(st.seed, kVerifyStream));
    double weighted = 0.0;
    for (const auto& [alpha, coef] : f.terms()) weighted += std::abs(coef) * std::pow(r, alpha.degree());
    if (est.lower < weighted * (1.0 - 1e-9)) {
      Violator v;
      v.f = f;
      v.r = r;
      v.weighted_l1 = weighted;
      v.sup_lower = est.lower;
      v.critical_r = critical_radius(f, est.lower);
      return v;
    }
    if (round == st.budget.exchange_rounds) break;
    st.pb.add_point(local_angles(st.pb, est.witness));
    const auto again = descend(st.pb.samples, w, c, std::max<std::uint32_t>(st.budget.descent_steps / 2, 1));
    st.steps_used += again.steps;
    c = again.c;
    if (!(again.max_ratio < 1.0)) break;
  }
  return std::nullopt;
}

std::optional<Violator> search_at(SearchState& st, double r, std::uint64_t round_seed,
                                  const std::vector<VectorXcd>& warm) {
  if (st.pb.vars() == 0 || st.pb.terms() < 2) return std::nullopt;
  const VectorXd w = st.pb.weights(r);

  std::vector<VectorXcd> starts = warm;
  for (const auto& c : st.pool) starts.push_back(c);
  for (std::uint32_t i = 0; i < st.budget.restarts; ++i) {
    starts.push_back(random_start(st.pb.terms(), split_seed(round_seed, i)));
  }
  if (st.steps_used + starts.size() * st.budget.descent_steps > st.budget.max_descent_steps) {
    st.exhausted = true;
    return std::nullopt;
  }

  std::vector<DescentResult> results(starts.size());
  const MatrixXcd& M = st.pb.samples;
  parallel_for(starts.size(), [&](std::size_t i) { results[i] = descend(M, w, starts[i], st.budget.descent_steps); });
  for (const auto& res : results) st.steps_used += res.steps;

  std::vector<std::size_t> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return results[a].max_ratio < results[b].max_ratio; });

  constexpr std::size_t kVerifyCandidates = 4;
  for (std::size_t rank = 0; rank < std::min(kVerifyCandidates, order.size()); ++rank) {
    auto& res = results[order[rank]];
    if (!(res.max_ratio < 1.0)) break;
    if (auto v = verify(st, res.c, r)) return v;
  }
  return std::nullopt;
}

// Direct check of a given polynomial, used for warm starts.
std::optional<Violator> assess(const SearchState& st, const VectorXcd& c) {
  const PolydiscPolynomial f = st.pb.to_polynomial(c);
  if (f.terms().size() < 2) return std::nullopt;
  const SupEstimate est = sup_lower(f, st.budget.verify, split_seed(st.seed, kVerifyStream));
  if (!(est.lower < f.l1_norm() * (1.0 - 1e-9))) return std::nullopt;
  Violator v;
  v.f = f;
  v.sup_lower = est.lower;
  v.critical_r = critical_radius(f, est.lower);
  v.r = v.critical_r;
  v.weighted_l1 = est.lower;
  return v;
}

void remember(SearchState& st, const Violator& v) {
  st.pool.insert(st.pool.begin(), st.pb.from_polynomial(v.f));
  constexpr std::size_t kPoolSize = 4;
  if (st.pool.size() > kPoolSize) st.pool.resize(kPoolSize);
}

}  // namespace

std::optional<Violator> find_violator(const std::vector<MultiIndex>& lambda, double r, const SearchBudget& budget,
                                      std::uint64_t seed, const std::vector<PolydiscPolynomial>& warm_starts) {
  if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorCode::invalid_argument, "r must lie in (0, 1]");
  SearchState st(make_problem(lambda, budget, seed), budget, seed);
  std::vector<VectorXcd> warm;
  for (const auto& P : warm_starts) {
    VectorXcd c = st.pb.from_polynomial(P);
    if (c.cwiseAbs().sum() > 0.0) warm.push_back(std::move(c));
  }
  return search_at(st, r, split_seed(seed, kRestartStream), warm);
}

KEstimate heuristic_K(const std::vector<MultiIndex>& lambda, const SearchBudget& budget, std::uint64_t seed,
                      const std::vector<PolydiscPolynomial>& warm_starts) {
  if (lambda.size() > 200) throw Error(ErrorCode::resource_limit, "heuristic_K supports |Lambda| <= 200");
  for (const auto& alpha : lambda) {
    if (alpha.degree() > kMaxSearchDegree) {
      throw Error(ErrorCode::resource_limit, "heuristic_K supports degrees <= " + std::to_string(kMaxSearchDegree));
    }
  }
  if (!(budget.r_tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "r_tolerance must be positive");

  KEstimate out;
  out.bound.method = "heuristic-bisection";
  SearchState st(make_problem(lambda, budget, seed), budget, seed);

  std::vector<VectorXcd> warm;
  for (const auto& P : warm_starts) {
    VectorXcd c = st.pb.from_polynomial(P);
    if (c.cwiseAbs().sum() > 0.0) warm.push_back(std::move(c));
  }

  double lo = 0.0;
  double hi = 1.0;
  auto consider = [&](const Violator& v) {
    if (!out.best || v.critical_r < out.best->critical_r) out.best = v;
    hi = std::min(hi, v.critical_r);
    remember(st, v);
  };

  // K(Lambda) <= K of any sub-spectrum, so solve the one-variable
  // restrictions first; their violators are violators for Lambda as well.
  if (st.pb.vars() > 1) {
    std::map<std::vector<std::uint32_t>, std::optional<Violator>> solved;
    for (const std::uint32_t j : st.pb.active) {
      std::vector<std::uint32_t> exps;
      for (const auto& alpha : lambda) {
        if (alpha.degree() == 0 || (alpha.max_coordinate() == j && alpha.exponent(j) == alpha.degree())) {
          exps.push_back(alpha.degree());
        }
      }
      std::sort(exps.begin(), exps.end());
      if (exps.size() < 2 || exps.back() < 2) continue;
      auto it = solved.find(exps);
      if (it == solved.end()) {
        std::vector<MultiIndex> sub;
        for (const std::uint32_t e : exps) sub.push_back(MultiIndex::unit(1, e));
        KEstimate est = heuristic_K(sub, budget, seed);
        st.steps_used += est.descent_steps_used;
        it = solved.emplace(exps, std::move(est.best)).first;
      }
      if (!it->second) continue;
      Violator v = *it->second;
      PolydiscPolynomial f(st.pb.dimension);
      for (const auto& [alpha, coef] : it->second->f.terms()) f.set(MultiIndex::unit(j, alpha.degree()), coef);
      v.f = std::move(f);
      consider(v);
    }
  }

  std::uint32_t step = 0;
  auto probe = [&](double r) {
    auto v = search_at(st, r, split_seed(split_seed(seed, kRestartStream), step), step == 0 ? warm : std::vector<VectorXcd>{});
    ++step;
    return v;
  };

  for (const auto& c : warm) {
    if (auto v = assess(st, c)) consider(*v);
  }

  std::optional<Violator> first = out.best;
  if (!first) first = probe(1.0);
  if (first) {
    consider(*first);
    while (hi - lo > budget.r_tolerance && !st.exhausted) {
      const double mid = 0.5 * (lo + hi);
      if (auto found = probe(mid)) {
        consider(*found);
      } else if (!st.exhausted) {
        lo = mid;
      }
    }
  } else {
    lo = 1.0;
  }

  // A violator below an earlier "none found" probe overrides that probe.
  out.bound.lower = std::min(lo, hi);
  out.bound.upper = hi;
  out.bound.certified_lower = false;
  out.bound.certified_upper = false;
  out.bound.partial = st.exhausted;
  out.bound.provenance.push_back(out.best ? "violator-search" : "no-violator-found");
  // The inner search is not known to find near-extremal f on large spectra.
  if (lambda.size() > 50) out.bound.provenance.push_back("low-confidence: |Lambda| > 50");
  out.bisection_steps = step;
  out.descent_steps_used = st.steps_used;
  return out;
}

KEstimate heuristic_L(const IndexSet& J, const SearchBudget& budget, std::uint64_t seed, const PrimeTable& table,
                      const std::vector<PolydiscPolynomial>& warm_starts) {
  KEstimate est = heuristic_K(decode_set(J, table), budget, seed, warm_starts);
  est.bound.provenance.push_back("index-set:" + J.label());
  return est;
}

}  // namespace dbr
