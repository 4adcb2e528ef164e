#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lct/engine.hpp"
#include "lct/equivariant.hpp"
#include "lct/fiberwise.hpp"
#include "lct/lp.hpp"

namespace lct {

using Json = nlohmann::ordered_json;

// Every rational is written as a "p/q" string.

Json rat_json(const Rat& r);
/// Accepts "p/q" strings and JSON integers. Throws ParseError.
Rat rat_from_json(const Json& j, const std::string& field);

/// {"coeffs": [...], "relation": ">=" | ">", "rhs": "p/q", "provenance": "..."}
Json row_json(const Row& r);
Row row_from_json(const Json& j, std::size_t width, const std::string& field);

/// {"variables": [...], "rows": [...]}
Json system_json(const LinearSystem& s);
LinearSystem system_from_json(const Json& j);

/// {"multipliers": [...], "derived": row}
Json certificate_json(const InfeasibilityCertificate& c, const std::vector<std::string>& variables);
/// `derived` is optional on input; replay recomputes it.
InfeasibilityCertificate certificate_from_json(const Json& j, std::size_t rows, std::size_t width);

/// {"status": "infeasible", "certificate": ...} or {"status": "feasible", "point": [...]}
Json feasibility_json(const FeasibilityResult& r, const std::vector<std::string>& variables);

Json pullback_json(const PullbackVector& p, const std::string& point);
Json witness_json(const WitnessBound& w);
Json case_json(const CaseResult& c);
Json table_json(const std::vector<TableRow>& rows);
Json invariant_json(const InvariantResult& r);
Json fiberwise_json(const FiberwiseResult& r);

/// Reads a whole file and parses it as JSON. Throws ParseError.
Json read_json_file(const std::string& path);

}  // namespace lct
