#include "omrel/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace omrel {

json to_json(const RelModel& m) {
  json vars = json::object();
  for (const auto& [name, rel] : m.vars) {
    json pairs = json::array();
    for (auto [u, v] : rel.pairs()) pairs.push_back({u, v});
    vars[name] = std::move(pairs);
  }
  return json{{"base", m.base}, {"vars", std::move(vars)}};
}

RelModel rel_model_from_json(const json& j) {
  RelModel m;
  m.base = j.at("base").get<std::size_t>();
  if (m.base == 0) throw std::invalid_argument("model base must be at least 1");
  for (const auto& [name, pairs] : j.at("vars").items()) {
    BitRel r(m.base);
    for (const auto& p : pairs) {
      auto u = p.at(0).get<std::size_t>();
      auto v = p.at(1).get<std::size_t>();
      if (u >= m.base || v >= m.base) throw std::invalid_argument("pair outside the base");
      r.set(u, v);
    }
    m.vars[name] = std::move(r);
  }
  return m;
}

json to_json(const LangModel& m) {
  json alphabet = json::array();
  for (char c : m.alphabet) alphabet.push_back(std::string(1, c));
  json vars = json::object();
  for (const auto& [name, lang] : m.vars) {
    std::vector<Word> words(lang.begin(), lang.end());
    std::sort(words.begin(), words.end(), shortlex_less);
    vars[name] = words;
  }
  return json{{"alphabet", std::move(alphabet)}, {"vars", std::move(vars)}};
}

LangModel lang_model_from_json(const json& j) {
  LangModel m;
  for (const auto& s : j.at("alphabet")) {
    auto sym = s.get<std::string>();
    if (sym.size() != 1) throw std::invalid_argument("alphabet symbols must be single characters");
    m.alphabet.push_back(sym[0]);
  }
  for (const auto& [name, words] : j.at("vars").items()) {
    Language l;
    for (const auto& w : words) l.insert(w.get<std::string>());
    m.vars[name] = std::move(l);
  }
  return m;
}

json to_json(const CounterexampleReport& r) {
  json j;
  j["equation"] = render(r.equation);
  if (const auto* rm = std::get_if<RelModel>(&r.model)) {
    j["kind"] = "relation";
    j["model"] = to_json(*rm);
    const auto& w = std::get<std::pair<std::size_t, std::size_t>>(r.witness);
    j["witness"] = {w.first, w.second};
  } else {
    j["kind"] = "language";
    j["model"] = to_json(std::get<LangModel>(r.model));
    j["witness"] = std::get<Word>(r.witness);
  }
  j["witness_side"] = r.witness_in_lhs ? "lhs" : "rhs";
  if (r.mode) j["mode"] = to_string(*r.mode);
  j["exhaustive"] = r.exhaustive;
  return j;
}

CounterexampleReport report_from_json(const json& j) {
  CounterexampleReport r;
  r.equation = parse_equation(j.at("equation").get<std::string>());
  if (j.at("kind").get<std::string>() == "relation") {
    r.model = rel_model_from_json(j.at("model"));
    r.witness = std::make_pair(j.at("witness").at(0).get<std::size_t>(),
                               j.at("witness").at(1).get<std::size_t>());
  } else {
    r.model = lang_model_from_json(j.at("model"));
    r.witness = j.at("witness").get<std::string>();
  }
  r.witness_in_lhs = j.at("witness_side").get<std::string>() == "lhs";
  if (j.contains("mode")) {
    auto m = j.at("mode").get<std::string>();
    r.mode = m == "integral" ? SearchMode::Integral
                             : (m == "commutative" ? SearchMode::Commutative : SearchMode::General);
  }
  r.exhaustive = j.value("exhaustive", false);
  return r;
}

json to_json(const SearchStats& s) {
  return json{{"candidates", s.candidates},
              {"accepted", s.accepted},
              {"rejected", s.rejected},
              {"exhaustive_bases", s.exhaustive_bases},
              {"exhaustive_only", s.exhaustive_only}};
}

json to_json(const ProofTrace& t) {
  json terms = json::array();
  for (const auto& term : t.terms) terms.push_back(render(term));
  json steps = json::array();
  for (const auto& s : t.steps) {
    json focus;
    switch (s.focus.kind) {
      case Focus::Kind::Whole: focus = {{"kind", "whole"}}; break;
      case Focus::Kind::Subset: focus = {{"kind", "subset"}, {"indices", s.focus.indices}}; break;
      case Focus::Kind::Window: focus = {{"kind", "window"}, {"indices", s.focus.indices}}; break;
    }
    json sub = json::object();
    for (const auto& [k, v] : s.substitution) sub[k] = render(v);
    steps.push_back({{"path", s.path},
                     {"focus", std::move(focus)},
                     {"axiom", s.axiom},
                     {"direction", s.direction == Direction::LeftToRight ? "ltr" : "rtl"},
                     {"substitution", std::move(sub)},
                     {"orientation", s.backward ? "backward" : "forward"}});
  }
  return json{{"terms", std::move(terms)}, {"steps", std::move(steps)}};
}

ProofTrace trace_from_json(const json& j) {
  ProofTrace t;
  for (const auto& term : j.at("terms")) t.terms.push_back(parse(term.get<std::string>()));
  for (const auto& js : j.at("steps")) {
    ProofStep s;
    s.path = js.at("path").get<std::vector<std::size_t>>();
    auto kind = js.at("focus").at("kind").get<std::string>();
    if (kind == "subset") {
      s.focus.kind = Focus::Kind::Subset;
    } else if (kind == "window") {
      s.focus.kind = Focus::Kind::Window;
    } else if (kind != "whole") {
      throw std::invalid_argument("unknown focus kind: " + kind);
    }
    if (s.focus.kind != Focus::Kind::Whole) {
      s.focus.indices = js.at("focus").at("indices").get<std::vector<std::size_t>>();
    }
    s.axiom = js.at("axiom").get<std::string>();
    s.direction = js.at("direction").get<std::string>() == "rtl" ? Direction::RightToLeft
                                                                  : Direction::LeftToRight;
    for (const auto& [k, v] : js.at("substitution").items()) {
      s.substitution[k] = parse(v.get<std::string>());
    }
    s.backward = js.value("orientation", "forward") == "backward";
    t.steps.push_back(std::move(s));
  }
  return t;
}

json to_json(const ProofStats& s) {
  return json{{"nodes_expanded", s.nodes_expanded},
              {"nodes_seen", s.nodes_seen},
              {"depth_reached", s.depth_reached},
              {"node_budget_hit", s.node_budget_hit}};
}

}  // namespace omrel
