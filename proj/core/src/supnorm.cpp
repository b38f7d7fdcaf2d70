#include "dbr/supnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dbr/error.hpp"
#include "dbr/parallel.hpp"
#include "dbr/rng.hpp"

namespace dbr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// Flattened polynomial over its active coordinates only. Variables that do
// not occur cannot change |P|, so sampling happens in the smaller space and
// the witness is expanded back at the end.
struct Compiled {
  std::vector<std::uint32_t> active;  // original 1-based coordinates
  std::vector<std::uint32_t> max_exp;
  std::vector<Complex> coef;
  std::vector<std::uint32_t> term_begin;  // CSR over (var, exp)
  std::vector<std::uint32_t> term_var;
  std::vector<std::uint32_t> term_exp;
  std::vector<std::uint32_t> var_begin;   // CSR over (term, exp) per variable
  std::vector<std::uint32_t> var_term;
  std::vector<std::uint32_t> var_exp;

  std::size_t vars() const { return active.size(); }
  std::size_t terms() const { return coef.size(); }
};

Compiled compile(const PolydiscPolynomial& P) {
  Compiled c;
  for (const auto& [alpha, a] : P.terms()) {
    for (const auto& [coord, e] : alpha.entries()) c.active.push_back(coord);
  }
  std::sort(c.active.begin(), c.active.end());
  c.active.erase(std::unique(c.active.begin(), c.active.end()), c.active.end());
  c.max_exp.assign(c.active.size(), 0);

  auto local = [&](std::uint32_t coord) {
    return static_cast<std::uint32_t>(std::lower_bound(c.active.begin(), c.active.end(), coord) - c.active.begin());
  };
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> per_var(c.active.size());
  c.term_begin.push_back(0);
  for (const auto& [alpha, a] : P.terms()) {
    const auto t = static_cast<std::uint32_t>(c.coef.size());
    c.coef.push_back(a);
    for (const auto& [coord, e] : alpha.entries()) {
      const std::uint32_t v = local(coord);
      c.term_var.push_back(v);
      c.term_exp.push_back(e);
      c.max_exp[v] = std::max(c.max_exp[v], e);
      per_var[v].emplace_back(t, e);
    }
    c.term_begin.push_back(static_cast<std::uint32_t>(c.term_var.size()));
  }
  c.var_begin.push_back(0);
  for (const auto& list : per_var) {
    for (const auto& [t, e] : list) {
      c.var_term.push_back(t);
      c.var_exp.push_back(e);
    }
    c.var_begin.push_back(static_cast<std::uint32_t>(c.var_term.size()));
  }
  return c;
}

// Scratch space for evaluating one point; powers[v][e] = z_v^e.
struct Evaluator {
  const Compiled& poly;
  std::vector<std::vector<Complex>> powers;

  explicit Evaluator(const Compiled& c) : poly(c), powers(c.vars()) {
    for (std::size_t v = 0; v < c.vars(); ++v) powers[v].resize(c.max_exp[v] + 1);
  }

  void set_point(std::span<const double> theta) {
    for (std::size_t v = 0; v < poly.vars(); ++v) {
      auto& pw = powers[v];
      pw[0] = 1.0;
      if (pw.size() > 1) pw[1] = std::polar(1.0, theta[v]);
      for (std::size_t e = 2; e < pw.size(); ++e) pw[e] = pw[e - 1] * pw[1];
    }
  }

  Complex term(std::size_t t) const {
    Complex value = poly.coef[t];
    for (std::uint32_t k = poly.term_begin[t]; k < poly.term_begin[t + 1]; ++k) {
      value *= powers[poly.term_var[k]][poly.term_exp[k]];
    }
    return value;
  }

  Complex value() const {
    Complex sum{};
    for (std::size_t t = 0; t < poly.terms(); ++t) sum += term(t);
    return sum;
  }
};

// |sum_e B_e w^e| at w = e^{i theta}, Horner in w.
double trig_modulus(std::span<const Complex> B, double theta) {
  const Complex w = std::polar(1.0, theta);
  Complex acc{};
  for (std::size_t e = B.size(); e-- > 0;) acc = acc * w + B[e];
  return std::abs(acc);
}

// Maximizer of |sum_e B_e e^{i e theta}| over the circle: exact for degree 1,
// otherwise a uniform scan followed by golden-section refinement of the best
// bracket. Ties keep the first (smallest) angle.
std::pair<double, double> maximize_on_circle(std::span<const Complex> B) {
  std::size_t deg = B.size() - 1;
  while (deg > 0 && B[deg] == Complex{}) --deg;
  if (deg == 0) return {0.0, std::abs(B[0])};
  if (deg == 1) {
    // |B0 + B1 w| is maximal when B1 w is aligned with B0.
    const double theta = B[0] == Complex{} ? 0.0 : wrap_angle(std::arg(B[0]) - std::arg(B[1]));
    return {theta, trig_modulus(B.first(2), theta)};
  }
  const auto active = B.first(deg + 1);
  const std::size_t scan = std::max<std::size_t>(32, 8 * (deg + 1));
  const double step = kTwoPi / static_cast<double>(scan);
  double best_theta = 0.0;
  double best = -1.0;
  for (std::size_t s = 0; s < scan; ++s) {
    const double th = step * static_cast<double>(s);
    const double v = trig_modulus(active, th);
    if (v > best) {
      best = v;
      best_theta = th;
    }
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double a = best_theta - step;
  double b = best_theta + step;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = trig_modulus(active, c);
  double fd = trig_modulus(active, d);
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = trig_modulus(active, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = trig_modulus(active, d);
    }
  }
  const double mid = wrap_angle(0.5 * (a + b));
  const double fmid = trig_modulus(active, mid);
  if (fmid > best) return {mid, fmid};
  return {best_theta, best};
}

// Cyclic coordinate ascent on |P|; each accepted move strictly increases |P|.
double coordinate_ascent(const Compiled& poly, std::vector<double>& theta, std::uint32_t sweeps) {
  Evaluator ev(poly);
  std::vector<Complex> t(poly.terms());
  std::vector<Complex> B;
  double current = 0.0;
  for (std::uint32_t sweep = 0; sweep < sweeps; ++sweep) {
    ev.set_point(theta);
    Complex f{};
    for (std::size_t i = 0; i < poly.terms(); ++i) {
      t[i] = ev.term(i);
      f += t[i];
    }
    current = std::abs(f);
    const double at_start = current;
    for (std::size_t v = 0; v < poly.vars(); ++v) {
      const std::uint32_t deg = poly.max_exp[v];
      B.assign(deg + 1, Complex{});
      const Complex zc = std::conj(ev.powers[v][1]);
      Complex rest = f;
      for (std::uint32_t k = poly.var_begin[v]; k < poly.var_begin[v + 1]; ++k) {
        const std::uint32_t i = poly.var_term[k];
        const std::uint32_t e = poly.var_exp[k];
        rest -= t[i];
        Complex unwound = t[i];
        for (std::uint32_t r = 0; r < e; ++r) unwound *= zc;
        B[e] += unwound;
      }
      B[0] += rest;
      const auto [angle, value] = maximize_on_circle(B);
      if (!(value > current)) continue;

      theta[v] = angle;
      auto& pw = ev.powers[v];
      pw[1] = std::polar(1.0, angle);
      for (std::size_t e = 2; e < pw.size(); ++e) pw[e] = pw[e - 1] * pw[1];
      Complex nf{};
      for (std::size_t e = pw.size(); e-- > 0;) nf = nf * pw[1] + B[e];
      for (std::uint32_t k = poly.var_begin[v]; k < poly.var_begin[v + 1]; ++k) {
        const std::uint32_t i = poly.var_term[k];
        // B-component of term i times the new power of z_v
        Complex unwound = t[i];
        for (std::uint32_t r = 0; r < poly.var_exp[k]; ++r) unwound *= zc;
        t[i] = unwound * pw[poly.var_exp[k]];
      }
      f = nf;
      current = value;
    }
    // Joint rotation z_v -> e^{it} z_v of all variables; the cyclic moves
    // converge slowly along this direction when low degrees carry little mass.
    if (poly.vars() > 1) {
      B.assign(1, Complex{});
      for (std::size_t i = 0; i < poly.terms(); ++i) {
        std::uint32_t deg = 0;
        for (std::uint32_t k = poly.term_begin[i]; k < poly.term_begin[i + 1]; ++k) deg += poly.term_exp[k];
        if (deg >= B.size()) B.resize(deg + 1, Complex{});
        B[deg] += t[i];
      }
      const auto [angle, value] = maximize_on_circle(B);
      if (value > current) {
        for (double& th : theta) th = wrap_angle(th + angle);
        current = value;
      }
    }
    if (!(current > at_start * (1.0 + 1e-15))) break;
  }
  ev.set_point(theta);
  return std::abs(ev.value());
}

struct Candidate {
  double value = -1.0;
  std::vector<double> theta;
};

std::uint64_t ipow_capped(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

Complex eval(const PolydiscPolynomial& P, const TorusPoint& z) {
  if (z.angles.size() != P.dimension()) {
    throw Error(ErrorCode::invalid_argument, "torus point has " + std::to_string(z.angles.size()) +
                                                 " angles, polynomial has dimension " +
                                                 std::to_string(P.dimension()));
  }
  Complex sum{};
  for (const auto& [alpha, c] : P.terms()) {
    double phase = 0.0;
    for (const auto& [coord, e] : alpha.entries()) phase += static_cast<double>(e) * z.angles[coord - 1];
    sum += c * std::polar(1.0, phase);
  }
  return sum;
}

Complex eval_at(const PolydiscPolynomial& P, std::span<const Complex> z) {
  if (z.size() != P.dimension()) {
    throw Error(ErrorCode::invalid_argument, "point dimension does not match polynomial dimension");
  }
  Complex sum{};
  for (const auto& [alpha, c] : P.terms()) {
    Complex term = c;
    for (const auto& [coord, e] : alpha.entries()) {
      for (std::uint32_t r = 0; r < e; ++r) term *= z[coord - 1];
    }
    sum += term;
  }
  return sum;
}

SupEstimate sup_lower(const PolydiscPolynomial& P, const SupBudget& budget, std::uint64_t seed,
                      double analytic_upper) {
  SupEstimate out;
  out.seed = seed;
  out.witness.angles.assign(P.dimension(), 0.0);
  if (P.empty()) {
    out.method = "zero";
    return out;
  }
  const double l1 = P.l1_norm();
  out.upper = std::min(l1, analytic_upper);
  const std::string upper_tag = analytic_upper < l1 ? "analytic" : "l1";

  const Compiled poly = compile(P);
  const std::size_t k = poly.vars();
  if (k == 0) {
    out.lower = std::abs(poly.coef[0]);
    out.method = "constant+" + upper_tag;
    return out;
  }

  bool use_grid = false;
  const std::uint64_t grid_points = ipow_capped(budget.grid_per_dim, k, budget.max_grid_points);
  switch (budget.mode) {
    case SamplingMode::automatic:
      use_grid = k <= 6 && budget.grid_per_dim > 0 && grid_points <= budget.max_grid_points;
      break;
    case SamplingMode::grid:
      if (k > 12 || grid_points > budget.max_grid_points || budget.grid_per_dim == 0) {
        throw Error(ErrorCode::resource_limit, "grid of " + std::to_string(budget.grid_per_dim) + "^" +
                                                   std::to_string(k) + " points exceeds the budget");
      }
      use_grid = true;
      break;
    case SamplingMode::random:
      break;
  }
  if (!use_grid && budget.random_samples == 0) {
    throw Error(ErrorCode::invalid_argument, "random sampling needs random_samples > 0");
  }

  std::vector<Candidate> starts;

  if (use_grid) {
    // Keep the best grid_starts points; ties keep the earlier point.
    const std::size_t keep = std::max<std::uint32_t>(1, budget.grid_starts);
    std::vector<std::pair<double, std::uint64_t>> top;
    Evaluator ev(poly);
    std::vector<double> theta(k);
    const double step = kTwoPi / budget.grid_per_dim;
    for (std::uint64_t idx = 0; idx < grid_points; ++idx) {
      std::uint64_t rem = idx;
      for (std::size_t v = 0; v < k; ++v) {
        theta[v] = step * static_cast<double>(rem % budget.grid_per_dim);
        rem /= budget.grid_per_dim;
      }
      ev.set_point(theta);
      const double val = std::abs(ev.value());
      if (top.size() < keep || val > top.back().first) {
        auto pos = std::upper_bound(top.begin(), top.end(), val,
                                    [](double a, const auto& b) { return a > b.first; });
        top.insert(pos, {val, idx});
        if (top.size() > keep) top.pop_back();
      }
    }
    for (const auto& [val, idx] : top) {
      Candidate c;
      c.value = val;
      c.theta.resize(k);
      std::uint64_t rem = idx;
      for (std::size_t v = 0; v < k; ++v) {
        c.theta[v] = step * static_cast<double>(rem % budget.grid_per_dim);
        rem /= budget.grid_per_dim;
      }
      starts.push_back(std::move(c));
    }
    out.samples_used += grid_points;
  }

  const std::uint64_t batches = (budget.random_samples + kSampleBatch - 1) / kSampleBatch;
  std::vector<Candidate> batch_best(batches);
  parallel_for(batches, [&](std::size_t b) {
    Rng rng(split_seed(seed, b));
    Evaluator ev(poly);
    std::vector<double> theta(k);
    Candidate best;
    for (std::uint64_t s = 0; s < kSampleBatch; ++s) {
      for (auto& th : theta) th = rng.angle();
      ev.set_point(theta);
      const double val = std::abs(ev.value());
      if (val > best.value) {
        best.value = val;
        best.theta = theta;
      }
    }
    batch_best[b] = std::move(best);
  });
  out.samples_used += batches * kSampleBatch;
  for (auto& c : batch_best) starts.push_back(std::move(c));

  // Each start is refined independently; the reduction keeps the first
  // maximal result so the outcome does not depend on scheduling.
  std::vector<double> refined(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    refined[i] = coordinate_ascent(poly, starts[i].theta, budget.ascent_iters);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < starts.size(); ++i) {
    if (refined[i] > refined[best]) best = i;
  }

  for (std::size_t v = 0; v < k; ++v) out.witness.angles[poly.active[v] - 1] = wrap_angle(starts[best].theta[v]);
  out.lower = std::abs(eval(P, out.witness));
  if (out.lower > out.upper * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "sampled |P| = " << out.lower << " exceeds the supplied upper bound " << out.upper;
    throw Error(ErrorCode::precondition_violation, msg.str());
  }
  out.lower = std::min(out.lower, out.upper);
  out.method = std::string(use_grid ? "grid" : "random") + "+ascent+" + upper_tag;
  return out;
}

DirichletSup dirichlet_sup(const DirichletPolynomial& D, const SupBudget& budget, std::uint64_t seed,
                           const PrimeTable& table, double analytic_upper) {
  DirichletSup out;
  out.estimate = sup_lower(lift(D, table), budget, seed, analytic_upper);
  if (D.empty() || budget.tline_samples == 0) return out;
  std::vector<double> logs;
  std::vector<Complex> coef;
  for (const auto& [n, a] : D.terms()) {
    logs.push_back(std::log(static_cast<double>(n)));
    coef.push_back(a);
  }
  for (std::uint32_t k = 0; k < budget.tline_samples; ++k) {
    const double t = budget.tline_span * static_cast<double>(k) / budget.tline_samples;
    Complex sum{};
    for (std::size_t i = 0; i < coef.size(); ++i) sum += coef[i] * std::polar(1.0, -t * logs[i]);
    const double v = std::abs(sum);
    if (v > out.tline_max) {
      out.tline_max = v;
      out.tline_argmax = t;
    }
  }
  return out;
}

PolydiscPolynomial hom_project(const PolydiscPolynomial& P, std::uint32_t m, std::uint32_t K) {
  if (K <= P.max_degree()) {
    throw Error(ErrorCode::aliasing, "K = " + std::to_string(K) + " must exceed the degree " +
                                         std::to_string(P.max_degree()));
  }
  // Averaging P(omega_j z) omega_j^{-m} multiplies c_alpha by the mean of
  // omega_j^{|alpha| - m}, which is 1 when |alpha| = m and 0 otherwise.
  PolydiscPolynomial out(P.dimension());
  for (const auto& [alpha, c] : P.terms()) {
    const long shift = static_cast<long>(alpha.degree()) - static_cast<long>(m);
    Complex mean{};
    for (std::uint32_t j = 0; j < K; ++j) {
      mean += std::polar(1.0, kTwoPi * static_cast<double>(j) * static_cast<double>(shift) / K);
    }
    mean /= static_cast<double>(K);
    const Complex projected = c * mean;
    if (std::abs(projected) > 1e-12 * std::abs(c)) out.set(alpha, projected);
  }
  return out;
}

CaratheodoryResult caratheodory_check(const PolydiscPolynomial& P, std::span<const Complex> z0, std::uint32_t m,
                                      double sup_upper) {
  if (m == 0) throw Error(ErrorCode::invalid_argument, "the coefficient bound holds for m >= 1");
  if (sup_upper < 0.0) sup_upper = P.l1_norm();
  if (sup_upper > 1.0 + 1e-12) {
    throw Error(ErrorCode::precondition_violation, "polynomial is not normalized: certified sup bound " +
                                                       std::to_string(sup_upper) + " > 1");
  }
  for (const Complex& z : z0) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::invalid_argument, "z0 must lie in the open polydisc");
  }
  CaratheodoryResult r;
  r.lhs = std::abs(eval_at(homogeneous_part(P, m), z0));
  r.rhs = 2.0 * (1.0 - std::abs(P.coefficient(MultiIndex{})));
  r.pass = r.lhs <= r.rhs + 1e-9;
  return r;
}

}  // namespace dbr
