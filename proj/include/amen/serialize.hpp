#pragma once

#include <json.hpp>

#include "amen/amenability.hpp"
#include "amen/cell_graph.hpp"
#include "amen/error.hpp"
#include "amen/partition.hpp"
#include "amen/symmetry.hpp"

namespace amen {

/// {"cells": [[v, ...], ...]} in canonical order.
nlohmann::json partition_json(const Partition& p);

nlohmann::json component_json(const AnisotropicComponent& c);

/// Cells with sizes and kinds, pairs with d-values and kinds, and the rooted
/// anisotropic components with any tree issues.
nlohmann::json cells_json(const CellGraph& cg, const ForestAnalysis& fa);

/// {"amenable": bool, "failure": {...}?, "components": [...]?}
nlohmann::json verdict_json(const AmenabilityVerdict& v);

nlohmann::json report_json(const SymmetryReport& r);

/// {"error": {"kind": ..., "message": ...}}; NotAmenable errors also carry
/// the verdict.
nlohmann::json error_json(const Error& e);
nlohmann::json error_json(const std::string& kind, const std::string& message);

}  // namespace amen
