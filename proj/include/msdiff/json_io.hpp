#ifndef MSDIFF_JSON_IO_HPP
#define MSDIFF_JSON_IO_HPP

#include <json.hpp>

#include "msdiff/cherry.hpp"
#include "msdiff/lattice.hpp"
#include "msdiff/level_graph.hpp"
#include "msdiff/poincare.hpp"
#include "msdiff/strata_geometry.hpp"

namespace msdiff {

using Json = nlohmann::ordered_json;

/// Interchange format, field order fixed:
/// {vertices:[{level, legs:[int]}], edges:[{u, v, kappa}], mu:[int]}
/// Legs are 1-based marked-point indices.
Json graph_to_json(const EnhancedLevelGraph& g);
EnhancedLevelGraph graph_from_json(const Json& j);

Json cherry_to_json(const Cherry& c, int n);
Json verdict_to_json(const SmoothnessVerdict& v, int n);
Json census_to_json(const StratumCensus& c);
Json intersection_to_json(const IntersectionResult& r);
Json poly_to_json(const Poly& p, int dim);
Json twist_to_json(const TwistData& td);
Json lattice_result_to_json(const LatticeIndexResult& r);
Json plan_to_json(const BlowupPlan& p);

/// BigInt as a JSON number when it fits in 64 bits, decimal string otherwise.
Json bigint_to_json(const BigInt& v);

/// Graphviz rendering with one rank per level and kappa edge labels; the
/// interchange JSON is embedded as a comment line for round-tripping.
std::string graph_to_dot(const EnhancedLevelGraph& g);

} // namespace msdiff

#endif
