#pragma once

#include <string>

#include "json.hpp"

#include "dbr/polyspace.hpp"
#include "dbr/radius.hpp"
#include "dbr/supnorm.hpp"

namespace dbr {

// Dirichlet:  {"x": number, "terms": [[n, re, im], ...]}
// Polydisc:   {"d": number, "terms": [[[[coord, exp], ...], re, im], ...]}
// Terms are emitted in ascending key order, so output is byte-stable.

nlohmann::json to_json(const DirichletPolynomial& D);
nlohmann::json to_json(const PolydiscPolynomial& P);
nlohmann::json to_json(const SupEstimate& s);
nlohmann::json to_json(const RadiusBound& b);
nlohmann::json to_json(const RatioReport& r);

/// Throw parse_error naming the offending JSON path.
DirichletPolynomial dirichlet_from_json(const nlohmann::json& j);
PolydiscPolynomial polydisc_from_json(const nlohmann::json& j);

/// Fixed formatting used by every JSON writer: two-space indent, no locale.
std::string dump(const nlohmann::json& j);

}  // namespace dbr
