#include "omrel/json_io.hpp"

namespace omrel {

namespace {

json rendered(const std::vector<Term>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(render(t));
  return out;
}

}  // namespace

json to_json(const SatGraph& g) {
  json edges = json::array();
  for (const auto& [e, f] : g.labels) {
    edges.push_back({{"from", e.first}, {"to", e.second}, {"cores", rendered(f.cores)},
                     {"witness", g.witnesses.count(e) > 0}});
  }
  json queue = json::array();
  for (const auto& t : g.queue) {
    queue.push_back({{"u", t.u}, {"v", t.v}, {"tau", render(t.tau)}, {"sigma", render(t.sigma)},
                     {"processed", g.processed.count(t) > 0}});
  }
  return json{{"theta", render(g.theta)},
              {"nodes", g.nodes},
              {"u0", g.u0},
              {"v0", g.v0},
              {"steps", g.steps},
              {"edges", std::move(edges)},
              {"queue", std::move(queue)},
              {"basis", {{"generators", rendered(g.basis.generators)}, {"derived", rendered(g.basis.derived)}}}};
}

json to_json(const InvariantReport& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions) {
    json j{{"name", c.name}, {"status", to_string(c.status)}, {"unknowns", c.unknowns}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    conditions.push_back(std::move(j));
  }
  return json{{"step", r.step}, {"conditions", std::move(conditions)}, {"open_defects", r.open_defects}};
}

}  // namespace omrel
