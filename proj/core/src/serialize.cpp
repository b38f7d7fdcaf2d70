#include "dbr/serialize.hpp"

#include "dbr/error.hpp"

namespace dbr {

using nlohmann::json;

json to_json(const DirichletPolynomial& D) {
  json terms = json::array();
  for (const auto& [n, a] : D.terms()) terms.push_back(json::array({n, a.real(), a.imag()}));
  return json{{"x", D.length_bound()}, {"terms", std::move(terms)}};
}

json to_json(const PolydiscPolynomial& P) {
  json terms = json::array();
  for (const auto& [alpha, c] : P.terms()) {
    json idx = json::array();
    for (const auto& [coord, e] : alpha.entries()) idx.push_back(json::array({coord, e}));
    terms.push_back(json::array({std::move(idx), c.real(), c.imag()}));
  }
  return json{{"d", P.dimension()}, {"terms", std::move(terms)}};
}

json to_json(const SupEstimate& s) {
  return json{{"lower", s.lower},           {"upper", s.upper}, {"method", s.method},
              {"samples_used", s.samples_used}, {"seed", s.seed},   {"witness", s.witness.angles}};
}

json to_json(const RadiusBound& b) {
  return json{{"lower", b.lower},
              {"upper", b.upper},
              {"certified_lower", b.certified_lower},
              {"certified_upper", b.certified_upper},
              {"method", b.method},
              {"provenance", b.provenance},
              {"partial", b.partial}};
}

json to_json(const RatioReport& r) {
  json series = json::array();
  for (const auto& [size, ratio] : r.series) series.push_back(json::array({size, ratio}));
  return json{{"instances", r.instances}, {"max_ratio", r.max_ratio}, {"series", std::move(series)}};
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::parse_error, where + ": " + what);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::uint64_t index_at(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(where, "expected a positive integer");
  return j.get<std::uint64_t>();
}

}  // namespace

DirichletPolynomial dirichlet_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  if (!j.contains("x")) fail("$.x", "missing");
  if (!j.contains("terms") || !j["terms"].is_array()) fail("$.terms", "expected an array");
  const double x = number_at(j["x"], "$.x");
  if (!(x >= 1.0)) fail("$.x", "must be >= 1");
  DirichletPolynomial D(x);
  const auto& terms = j["terms"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "$.terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    if (!t.is_array() || t.size() != 3) fail(where, "expected [n, re, im]");
    const std::uint64_t n = index_at(t[0], where + "[0]");
    if (static_cast<double>(n) > x) fail(where + "[0]", "index exceeds x");
    D.set(n, Complex(number_at(t[1], where + "[1]"), number_at(t[2], where + "[2]")));
  }
  return D;
}

PolydiscPolynomial polydisc_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<long long>() < 0) {
    fail("$.d", "expected a non-negative integer");
  }
  if (!j.contains("terms") || !j["terms"].is_array()) fail("$.terms", "expected an array");
  PolydiscPolynomial P(j["d"].get<std::uint32_t>());
  const auto& terms = j["terms"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "$.terms[" + std::to_string(i) + "]";
    const auto& t = terms[i];
    if (!t.is_array() || t.size() != 3 || !t[0].is_array()) fail(where, "expected [[[coord, exp], ...], re, im]");
    std::vector<MultiIndex::Entry> entries;
    for (std::size_t k = 0; k < t[0].size(); ++k) {
      const std::string w = where + "[0][" + std::to_string(k) + "]";
      const auto& e = t[0][k];
      if (!e.is_array() || e.size() != 2) fail(w, "expected [coord, exp]");
      entries.emplace_back(static_cast<std::uint32_t>(index_at(e[0], w + "[0]")),
                           static_cast<std::uint32_t>(index_at(e[1], w + "[1]")));
    }
    const MultiIndex alpha = MultiIndex::from_pairs(std::move(entries));
    if (alpha.max_coordinate() > P.dimension()) fail(where, "coordinate exceeds d");
    P.set(alpha, Complex(number_at(t[1], where + "[1]"), number_at(t[2], where + "[2]")));
  }
  return P;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace dbr
