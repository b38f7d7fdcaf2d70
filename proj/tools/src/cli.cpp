#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dbr/app.hpp"
#include "dbr/error.hpp"
#include "dbr/numtheory.hpp"
#include "dbr/serialize.hpp"
#include "dbr/witnesses.hpp"

namespace dbr::app {

namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(std::string_view text, std::size_t pos, const std::string& what) {
  throw Error(ErrorCode::parse_error,
              "index set '" + std::string(text) + "' at column " + std::to_string(pos + 1) + ": " + what);
}

double parse_number(std::string_view text, std::size_t pos, std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) bad_spec(text, pos, "expected a number");
  return value;
}

std::uint64_t parse_count(std::string_view text, std::size_t pos, std::string_view token) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || token.empty()) bad_spec(text, pos, "expected a positive integer");
  return value;
}

// Cap for index sets: beyond this the heuristic searches are meaningless anyway.
constexpr double kMaxSetBound = 1e7;

double parse_bound(std::string_view text, std::size_t pos) {
  const double x = parse_number(text, pos, text.substr(pos));
  if (x < 1.0 || x > kMaxSetBound) bad_spec(text, pos, "bound must lie in [1, 1e7]");
  return x;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
}

std::uint64_t table_limit(const IndexSet& J) { return std::max<std::uint64_t>(J.max(), 2); }

}  // namespace

IndexSet parse_index_set(std::string_view text) {
  const std::string label(text);
  if (text.starts_with("range:")) {
    const std::size_t dots = text.find("..");
    if (dots == std::string_view::npos) bad_spec(text, 6, "expected 'a..b'");
    const std::uint64_t a = parse_count(text, 6, text.substr(6, dots - 6));
    const std::uint64_t b = parse_count(text, dots + 2, text.substr(dots + 2));
    if (a < 1 || a > b) bad_spec(text, 6, "need 1 <= a <= b");
    if (static_cast<double>(b) > kMaxSetBound) bad_spec(text, dots + 2, "bound must be at most 1e7");
    std::vector<std::uint64_t> members;
    for (std::uint64_t n = a; n <= b; ++n) members.push_back(n);
    return IndexSet(std::move(members), label);
  }
  if (text.starts_with("primes<=")) {
    const double x = parse_bound(text, 8);
    const PrimeTable table(std::max<std::uint64_t>(static_cast<std::uint64_t>(x), 2));
    std::vector<std::uint64_t> members{1};
    for (const std::uint64_t p : table.primes()) {
      if (static_cast<double>(p) <= x) members.push_back(p);
    }
    return IndexSet(std::move(members), label);
  }
  if (text.starts_with("powers-of-")) {
    const std::size_t le = text.find("<=");
    if (le == std::string_view::npos) bad_spec(text, 10, "expected '<='");
    const std::uint64_t p = parse_count(text, 10, text.substr(10, le - 10));
    if (p < 2 || factorize(p).pairs.size() != 1 || factorize(p).pairs[0].second != 1) bad_spec(text, 10, "base must be prime");
    const double x = parse_bound(text, le + 2);
    std::vector<std::uint64_t> members;
    for (std::uint64_t v = 1; static_cast<double>(v) <= x; v *= p) members.push_back(v);
    return IndexSet(std::move(members), label);
  }
  if (text.starts_with("blocks:")) {
    const std::size_t le = text.rfind("<=");
    if (le == std::string_view::npos || le < 7) bad_spec(text, 7, "expected '<=x' after the block list");
    json blocks_json;
    try {
      blocks_json = json::parse(text.substr(7, le - 7));
    } catch (const json::parse_error&) {
      bad_spec(text, 7, "block list is not a JSON array of arrays");
    }
    if (!blocks_json.is_array()) bad_spec(text, 7, "block list must be an array");
    std::vector<std::vector<std::uint64_t>> blocks;
    for (const auto& b : blocks_json) {
      if (!b.is_array()) bad_spec(text, 7, "each block must be an array of primes");
      std::vector<std::uint64_t>& block = blocks.emplace_back();
      for (const auto& p : b) {
        if (!p.is_number_unsigned()) bad_spec(text, 7, "block entries must be positive integers");
        block.push_back(p.get<std::uint64_t>());
      }
    }
    const double x = parse_bound(text, le + 2);
    IndexSet J = block_index_set(blocks, x);
    return IndexSet(J.members(), label);
  }
  bad_spec(text, 0, "expected range:, primes<=, powers-of-p<= or blocks:");
}

std::string table_csv(double x_min, double x_max, std::uint32_t points) {
  const AsymptoticFit fit = asymptotic_fit(log_grid(x_min, x_max, points));
  std::string out = "x,q,L_upper,target,ratio\n";
  for (std::size_t i = 0; i < fit.x.size(); ++i) {
    out += format_g(fit.x[i]) + ',' + std::to_string(fit.q[i]) + ',' + format_g(fit.upper[i]) + ',' +
           format_g(fit.target[i]) + ',' + format_g(fit.ratio[i]) + '\n';
  }
  return out;
}

json table_json(double x_min, double x_max, std::uint32_t points) {
  const AsymptoticFit fit = asymptotic_fit(log_grid(x_min, x_max, points));
  json rows = json::array();
  for (std::size_t i = 0; i < fit.x.size(); ++i) {
    rows.push_back({{"x", fit.x[i]},
                    {"q", fit.q[i]},
                    {"L_upper", fit.upper[i]},
                    {"target", fit.target[i]},
                    {"ratio", fit.ratio[i]}});
  }
  return {{"rows", std::move(rows)}, {"min_ratio", fit.min_ratio}, {"max_ratio", fit.max_ratio}, {"band", fit.band()}};
}

namespace {

constexpr const char* kSetHelp =
    "index set: range:a..b | primes<=x | powers-of-p<=x | blocks:[[2],[3,5]]<=x";

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;

  void write(const std::string& text) const {
    if (cfg.out.empty()) {
      out << text;
      return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::invalid_argument, "cannot write '" + cfg.out + "'");
    file << text;
  }
  void write(const json& j) const { write(dump(j) + '\n'); }
};

void require_json_format(const RunConfig& cfg, const char* command) {
  if (!cfg.format.empty() && cfg.format != "json") {
    throw Error(ErrorCode::invalid_argument, std::string(command) + " only supports --format json");
  }
}

int cmd_table(const RunConfig& cfg, const Emitter& emit, double x_min, double x_max, std::uint32_t points) {
  if (!(x_min >= 2.0) || !(x_max >= x_min) || points < 1 || (points == 1 && x_max != x_min)) {
    throw Error(ErrorCode::invalid_argument, "table needs 2 <= x_min <= x_max and points >= 1 (points >= 2 when x_min < x_max)");
  }
  if (cfg.format == "json") {
    emit.write(table_json(x_min, x_max, points));
  } else {
    emit.write(table_csv(x_min, x_max, points));
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, const Emitter& emit, const std::string& suite) {
  require_json_format(cfg, "verify");
  const SuiteResult r = run_suite(suite, cfg);
  emit.write(r.report);
  return r.pass ? kExitPass : kExitFailure;
}

// Accepts a bare polynomial or the envelope written by `witness`.
json read_polynomial_file(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("kind") && j.contains("polynomial")) return j.at("polynomial");
  return j;
}

int cmd_radius(const RunConfig& cfg, const Emitter& emit, const std::string& input) {
  require_json_format(cfg, "radius");
  if (!std::filesystem::exists(input)) {
    const IndexSet J = parse_index_set(input);
    const PrimeTable table(table_limit(J));
    emit.write(to_json(heuristic_L(J, cfg.search, cfg.seed, table).bound));
    return kExitPass;
  }
  const json j = read_polynomial_file(input);
  if (j.is_object() && j.contains("x")) {
    const DirichletPolynomial D = dirichlet_from_json(j);
    std::vector<std::uint64_t> members;
    for (const auto& [n, a] : D.terms()) members.push_back(n);
    const IndexSet J(std::move(members), "support of " + input);
    const PrimeTable table(table_limit(J));
    emit.write(to_json(heuristic_L(J, cfg.search, cfg.seed, table, {lift(D, table)}).bound));
    return kExitPass;
  }
  const PolydiscPolynomial P = polydisc_from_json(j);
  std::vector<MultiIndex> lambda;
  for (const auto& [alpha, c] : P.terms()) lambda.push_back(alpha);
  emit.write(to_json(heuristic_K(lambda, cfg.search, cfg.seed, {P}).bound));
  return kExitPass;
}

int cmd_supnorm(const RunConfig& cfg, const Emitter& emit, const std::string& path) {
  require_json_format(cfg, "supnorm");
  const json j = read_polynomial_file(path);
  if (j.is_object() && j.contains("x")) {
    const DirichletPolynomial D = dirichlet_from_json(j);
    const PrimeTable table(std::max<std::uint64_t>(static_cast<std::uint64_t>(D.length_bound()), 2));
    const DirichletSup s = dirichlet_sup(D, cfg.sup, cfg.seed, table);
    json out = to_json(s.estimate);
    out["tline_max"] = s.tline_max;
    out["tline_argmax"] = s.tline_argmax;
    emit.write(out);
    return kExitPass;
  }
  emit.write(to_json(sup_lower(polydisc_from_json(j), cfg.sup, cfg.seed)));
  return kExitPass;
}

struct WitnessArgs {
  std::string kind;
  std::uint32_t q = 0;
  double x = 0.0;
  double a = 0.9;
  std::uint32_t degree = 200;
  std::uint32_t vars = 0;
  std::uint32_t m = 2;
};

int cmd_witness(const RunConfig& cfg, const Emitter& emit, const WitnessArgs& w) {
  require_json_format(cfg, "witness");
  json out{{"kind", w.kind}};
  if (w.kind == "dft") {
    if ((w.q == 0) == (w.x == 0.0)) throw Error(ErrorCode::invalid_argument, "dft witness needs exactly one of --q, --x");
    const double x = w.q > 0 ? 0.0 : w.x;
    const PrimeTable table(std::max<std::uint64_t>(static_cast<std::uint64_t>(std::sqrt(std::max(x, 4.0))) + 1, 64 * std::uint64_t{w.q} + 64));
    const MatrixWitness mw = w.q > 0 ? dft_witness_for_q(w.q, table) : dft_witness(x, table);
    out["q"] = mw.q;
    out["x"] = mw.x;
    out["l1"] = mw.l1;
    out["analytic_sup_bound"] = mw.analytic_sup_bound;
    out["orthogonality_residual"] = mw.orthogonality_residual();
    out["L2_upper"] = to_json(witness_upper_Lm(mw.D, 2, mw.analytic_sup_bound));
    out["polynomial"] = to_json(mw.D);
  } else if (w.kind == "moebius") {
    const MoebiusWitness mw = moebius_witness(w.a, w.degree);
    out["a"] = mw.a;
    out["degree"] = mw.degree;
    out["critical_r"] = mw.critical_r;
    out["certified_r"] = mw.certified_r;
    out["closed_form_r"] = mw.closed_form_r;
    out["sup_upper"] = mw.sup_upper;
    out["truncated_r"] = mw.truncated_r;
    out["polynomial"] = to_json(mw.P);
  } else if (w.kind == "steinhaus") {
    if ((w.vars == 0) == (w.x == 0.0)) throw Error(ErrorCode::invalid_argument, "steinhaus witness needs exactly one of --vars, --x");
    out["m"] = w.m;
    out["seed"] = cfg.seed;
    if (w.vars > 0) {
      out["polynomial"] = to_json(steinhaus_witness(w.vars, w.m, cfg.seed));
    } else {
      out["polynomial"] = to_json(steinhaus_dirichlet(w.x, w.m, cfg.seed));
    }
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown witness kind '" + w.kind + "'");
  }
  emit.write(out);
  return kExitPass;
}

bool usage_error(ErrorCode code) {
  return code == ErrorCode::parse_error || code == ErrorCode::invalid_argument ||
         code == ErrorCode::index_out_of_range;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bohr radius experiments for Dirichlet series and polynomials on the polydisc", "dbr"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "base seed (decimal or 0x hex)")->capture_default_str();
  app.add_option("--budget-grid", cfg.sup.grid_per_dim, "grid points per torus variable")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget-samples", cfg.sup.random_samples, "random torus samples for sup estimates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget-ascent", cfg.sup.ascent_iters, "coordinate ascent sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget-restarts", cfg.search.restarts, "random restarts per bisection probe")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget-steps", cfg.search.descent_steps, "descent steps per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "write output to this file instead of stdout");

  double x_min = 0.0;
  double x_max = 0.0;
  std::uint32_t points = 0;
  auto* table = app.add_subcommand("table", "certified upper bounds on L(x) against (log x)^{1/4} x^{-1/8} (CSV)");
  table->add_option("x_min", x_min)->required();
  table->add_option("x_max", x_max)->required();
  table->add_option("points", points)->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a property suite; exit 0 iff every check passes");
  verify->add_option("suite", suite, "sandwich | kernels | blocks | caratheodory | ratios | bohr13 | all")->required();

  std::string radius_input;
  auto* radius = app.add_subcommand("radius", "heuristic Bohr radius estimate");
  radius->add_option("input", radius_input, std::string("polynomial JSON file or ") + kSetHelp)->required();

  std::string sup_input;
  auto* supnorm = app.add_subcommand("supnorm", "certified lower / upper sup-norm estimate of a polynomial JSON file");
  supnorm->add_option("input", sup_input)->required();

  WitnessArgs wargs;
  auto* witness = app.add_subcommand("witness", "build an extremal-candidate polynomial");
  witness->add_option("kind", wargs.kind, "dft | moebius | steinhaus")->required();
  witness->add_option("--q", wargs.q, "dft: matrix size");
  witness->add_option("--x", wargs.x, "dft: length bound; steinhaus: Dirichlet length");
  witness->add_option("--a", wargs.a, "moebius: parameter in (0, 1)")->capture_default_str();
  witness->add_option("--degree", wargs.degree, "moebius: truncation degree")->capture_default_str();
  witness->add_option("--vars", wargs.vars, "steinhaus: polydisc variables");
  witness->add_option("--m", wargs.m, "steinhaus: homogeneity")->capture_default_str();

  for (auto* sub : {table, verify, radius, supnorm, witness}) sub->fallthrough();
  app.footer(std::string("Index sets: ") + kSetHelp +
             "\nExit codes: 0 pass, 1 verification failure or runtime error, 2 usage or parse error."
             "\nDBR_THREADS caps worker threads.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "dbr: " << e.what() << '\n';
    return kExitUsage;
  }

  const Emitter emit{cfg, out};
  try {
    if (*table) return cmd_table(cfg, emit, x_min, x_max, points);
    if (*verify) return cmd_verify(cfg, emit, suite);
    if (*radius) return cmd_radius(cfg, emit, radius_input);
    if (*supnorm) return cmd_supnorm(cfg, emit, sup_input);
    return cmd_witness(cfg, emit, wargs);
  } catch (const Error& e) {
    err << "dbr: " << e.what() << '\n';
    return usage_error(e.code()) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "dbr: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dbr::app
