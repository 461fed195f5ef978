#pragma once

#include <json.hpp>

#include "omrel/model.hpp"
#include "omrel/prover.hpp"
#include "omrel/saturation.hpp"

namespace omrel {

using json = nlohmann::ordered_json;

/// {"base": n, "vars": {"x": [[u, v], ...]}}
json to_json(const RelModel& m);
RelModel rel_model_from_json(const json& j);

/// {"alphabet": ["a", "b"], "vars": {"x": ["a", "ab"]}}
json to_json(const LangModel& m);
LangModel lang_model_from_json(const json& j);

/// Model plus witness; `from_json` re-verifies nothing, call verify().
json to_json(const CounterexampleReport& r);
CounterexampleReport report_from_json(const json& j);

json to_json(const SearchStats& s);

/// {"terms": [...], "steps": [{"path", "focus", "axiom", "direction",
/// "substitution", "orientation"}]}
json to_json(const ProofTrace& t);
ProofTrace trace_from_json(const json& j);
json to_json(const ProofStats& s);

/// Nodes, edges with cores and witness flags, the task queue and the basis.
json to_json(const SatGraph& g);
json to_json(const InvariantReport& r);

}  // namespace omrel
