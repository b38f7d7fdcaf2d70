#pragma once

// Command-line front end. The commands live in a library so the tests can
// drive them without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dbr/polyspace.hpp"
#include "dbr/radius.hpp"
#include "dbr/supnorm.hpp"

namespace dbr::app {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t seed = 0x5EED;
  SupBudget sup;
  SearchBudget search;
  std::string format;  // csv | json; empty picks the command default
  std::string out;     // empty: stdout
};

/// Index-set mini-language:
///   range:a..b              {a, ..., b}
///   primes<=x               {1} and the primes up to x
///   powers-of-p<=x          {p^k <= x : k >= 0}, p prime
///   blocks:[[2],[3,5]]<=x   products of primes within one block, plus 1
/// Throws Error(parse_error) with the offending position.
IndexSet parse_index_set(std::string_view text);

/// Rows x, q, L_upper, target, ratio over a log-spaced grid.
std::string table_csv(double x_min, double x_max, std::uint32_t points);
nlohmann::json table_json(double x_min, double x_max, std::uint32_t points);

struct SuiteResult {
  bool pass = false;
  nlohmann::json report;
};

inline const std::vector<std::string> kSuites{"sandwich", "kernels", "blocks", "caratheodory", "ratios", "bohr13"};

/// Runs one property suite ("all" runs every suite). Throws
/// Error(invalid_argument) for an unknown name.
SuiteResult run_suite(std::string_view name, const RunConfig& config);

/// Full CLI: parses argv, writes results to out (or --out), diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dbr::app
