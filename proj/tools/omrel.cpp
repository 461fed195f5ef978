// omrel: prove, refute, decide, saturate, graph, reduce, selftest.
//
// Exit status: 0 for a definite verdict, 2 for unknown, 1 for errors.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#include "omrel/axioms.hpp"
#include "omrel/json_io.hpp"
#include "omrel/model.hpp"
#include "omrel/prover.hpp"
#include "omrel/saturation.hpp"
#include "omrel/selftest.hpp"
#include "omrel/termgraph.hpp"

using namespace omrel;

namespace {

struct Result {
  std::string verdict;
  json payload = json::object();
  std::vector<std::string> lines;  // plain-text rendering
  int exit = 0;
};

struct Globals {
  bool json_out = false;
  bool timing = false;
  std::uint64_t seed = 0x5eed;
  double timeout = 0;
  std::string command;
};

std::mutex output_mutex;
std::atomic<bool> finished{false};

void emit(const Globals& g, const Result& r, double seconds) {
  std::lock_guard<std::mutex> lock(output_mutex);
  if (finished.exchange(true)) return;
  if (g.json_out) {
    json j{{"command", g.command}, {"verdict", r.verdict}};
    for (auto it = r.payload.begin(); it != r.payload.end(); ++it) j[it.key()] = it.value();
    if (g.timing) j["seconds"] = seconds;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.verdict << "\n";
    for (const auto& l : r.lines) std::cout << l << "\n";
    if (g.timing) std::cout << "time " << seconds << "s\n";
  }
  std::cout.flush();
}

void start_watchdog(const Globals& g) {
  if (g.timeout <= 0) return;
  std::thread([g] {
    std::this_thread::sleep_for(std::chrono::duration<double>(g.timeout));
    Result r;
    r.verdict = "unknown";
    r.payload["reason"] = "timeout";
    r.lines.push_back("timed out after " + std::to_string(g.timeout) + "s");
    emit(g, r, g.timeout);
    std::_Exit(2);
  }).detach();
}

std::string model_text(const RelModel& m) {
  std::string out = "base " + std::to_string(m.base);
  for (const auto& [name, rel] : m.vars) {
    out += "; " + name + " = {";
    bool first = true;
    for (auto [u, v] : rel.pairs()) {
      out += (first ? "" : ", ") + std::string("(") + std::to_string(u) + "," + std::to_string(v) + ")";
      first = false;
    }
    out += "}";
  }
  return out;
}

std::string report_text(const CounterexampleReport& r) {
  if (const auto* m = std::get_if<RelModel>(&r.model)) {
    auto [u, v] = std::get<std::pair<std::size_t, std::size_t>>(r.witness);
    return model_text(*m) + "; witness (" + std::to_string(u) + "," + std::to_string(v) + ") in " +
           (r.witness_in_lhs ? "left" : "right") + " side only";
  }
  const auto& lm = std::get<LangModel>(r.model);
  std::string out;
  for (const auto& [name, lang] : lm.vars) {
    out += name + " = {";
    bool first = true;
    for (const auto& w : lang) {
      out += (first ? "\"" : ", \"") + w + "\"";
      first = false;
    }
    out += "}; ";
  }
  return out + "witness \"" + std::get<Word>(r.witness) + "\"";
}

// --- commands -----------------------------------------------------------------

struct ProveArgs {
  std::string equation;
  std::string axioms = "integral";
  int depth = 8;
  std::size_t nodes = 200000;
  bool no_variants = false;
};

Result cmd_prove(const ProveArgs& a) {
  Equation e = parse_equation(a.equation);
  ProofBudget b;
  b.max_depth = a.depth;
  b.max_nodes = a.nodes;
  b.instance_variants = !a.no_variants;
  AxiomSet set = axiom_set_from_string(a.axioms);
  auto out = prove(e, set, b);
  Result r;
  r.verdict = to_string(out.status);
  r.exit = out.proved() ? 0 : 2;
  r.payload = {{"equation", render(e)}, {"axioms", to_string(set)}, {"stats", to_json(out.stats)}};
  if (out.proved()) {
    r.payload["trace"] = to_json(out.trace);
    for (std::size_t i = 0; i < out.trace.terms.size(); ++i) {
      std::string line = "  " + render(out.trace.terms[i]);
      if (i < out.trace.steps.size()) {
        const auto& s = out.trace.steps[i];
        line += "\n    by " + s.axiom + (s.direction == Direction::LeftToRight ? " ->" : " <-");
      }
      r.lines.push_back(line);
    }
  } else {
    r.lines.push_back("no derivation within depth " + std::to_string(a.depth) + " and " + std::to_string(a.nodes) +
                      " nodes");
  }
  return r;
}

struct RefuteArgs {
  std::string equation;
  std::string mode = "rel";
  std::size_t max_base = 3;
  std::size_t random_models = 1000;
  std::size_t max_len = 2;
  std::size_t max_words = 3;
};

Result cmd_refute(const RefuteArgs& a, std::uint64_t seed) {
  Equation e = parse_equation(a.equation);
  std::optional<CounterexampleReport> report;
  SearchStats stats;
  bool exhaustive = false;
  if (a.mode == "lang") {
    LangSearchOptions o;
    o.max_len = a.max_len;
    o.max_words = a.max_words;
    o.random_models = a.random_models;
    o.seed = seed;
    auto res = search_lang_counterexample(e, o);
    report = std::move(res.report);
    stats = res.stats;
    exhaustive = res.exhaustive;
  } else {
    RelSearchOptions o;
    if (a.mode == "rel") {
      o.mode = SearchMode::General;
    } else if (a.mode == "rel-integral") {
      o.mode = SearchMode::Integral;
    } else if (a.mode == "rel-commutative") {
      o.mode = SearchMode::Commutative;
    } else {
      throw CLI::ValidationError("--mode", "expected rel, rel-integral, rel-commutative or lang");
    }
    o.max_base = a.max_base;
    o.random_models = a.random_models;
    o.seed = seed;
    auto res = search_rel_counterexample(e, o);
    report = std::move(res.report);
    stats = res.stats;
    exhaustive = res.stats.exhaustive_only;
  }
  Result r;
  r.payload = {{"equation", render(e)}, {"mode", a.mode}, {"stats", to_json(stats)}};
  if (report) {
    if (!report->verify()) throw std::logic_error("counterexample failed verification");
    r.verdict = "refuted";
    r.payload["counterexample"] = to_json(*report);
    r.lines.push_back(report_text(*report));
  } else {
    r.verdict = "unknown";
    r.exit = 2;
    r.payload["exhaustive"] = exhaustive;
    r.lines.push_back(std::string("no counterexample") + (exhaustive ? " (search space exhausted)" : "") + ", " +
                      std::to_string(stats.accepted) + " models checked");
  }
  return r;
}

Result cmd_decide(const std::string& text, const std::string& fragment) {
  if (fragment != "meet-comp-one") throw CLI::ValidationError("--fragment", "only meet-comp-one is supported");
  Equation e = parse_equation(text);
  auto one_way = [](const Term& a, const Term& b) { return decide_leq(a, b); };
  bool valid = one_way(e.lhs, e.rhs) && (e.relation == Relation::Leq || one_way(e.rhs, e.lhs));
  Result r;
  r.verdict = valid ? "valid" : "invalid";
  r.payload = {{"equation", render(e)}};
  if (valid) {
    if (!e.lhs.has_join() && !e.rhs.has_join() && !e.lhs.is_zero() && !e.rhs.is_zero() &&
        e.relation == Relation::Leq) {
      auto h = find_homomorphism(build_term_graph(e.rhs), build_term_graph(e.lhs));
      if (h) {
        r.payload["homomorphism"] = *h;
        std::string line = "homomorphism G(rhs) -> G(lhs):";
        for (std::size_t i = 0; i < h->size(); ++i) line += " " + std::to_string(i) + "->" + std::to_string((*h)[i]);
        r.lines.push_back(line);
      }
    }
    return r;
  }
  // A join-free part of one side that fails in its canonical countermodel.
  std::vector<std::string> vars = e.lhs.variables();
  for (const auto& v : e.rhs.variables()) vars.push_back(v);
  std::vector<std::pair<Term, Term>> directions{{e.lhs, e.rhs}};
  if (e.relation == Relation::Eq) directions.push_back({e.rhs, e.lhs});
  for (const auto& [a, b] : directions) {
    for (const auto& part : join_free_decompose(a)) {
      RelModel m = canonical_countermodel(part, vars);
      if (auto rep = check_in_model(e, m)) {
        r.payload["countermodel"] = to_json(*rep);
        r.lines.push_back(report_text(*rep));
        return r;
      }
    }
  }
  throw std::logic_error("invalid verdict without a countermodel");
}

struct SaturateArgs {
  std::string theta;
  std::string refute;
  std::size_t steps = 10;
  int pool_depth = 2;
  bool dot = false;
  bool check = false;
};

Result cmd_saturate(const SaturateArgs& a, const Globals& g) {
  Term theta = parse(a.theta);
  std::optional<Term> prime;
  if (!a.refute.empty()) prime = parse(a.refute);
  std::set<std::string> vs;
  for (const auto& v : theta.variables()) vs.insert(v);
  if (prime) {
    for (const auto& v : prime->variables()) vs.insert(v);
  }
  Oracle oracle(AxiomSet::Integral, SaturationBudget{}, {vs.begin(), vs.end()});
  Result r;
  SatGraph graph;
  if (prime) {
    auto res = refute(theta, *prime, a.steps, oracle, a.pool_depth);
    graph = res.graph;
    r.payload["diagnostics"] = res.diagnostics;
    if (res.report) {
      r.verdict = "refuted";
      r.payload["counterexample"] = to_json(*res.report);
      r.lines.push_back(report_text(*res.report));
    } else {
      r.verdict = "unknown";
      r.exit = 2;
      r.lines.push_back("no verified countermodel: " + res.diagnostics);
    }
  } else {
    graph = init_graph(theta, build_basis(theta, oracle, a.pool_depth), oracle);
    r.verdict = "ok";
  }
  if (a.check) {
    json reports = json::array();
    bool violated = false;
    if (prime) {
      auto rep = check_invariants(graph, oracle);
      violated = rep.any_violated();
      reports.push_back(to_json(rep));
    } else {
      for (std::size_t s = 0;; ++s) {
        auto rep = check_invariants(graph, oracle);
        violated |= rep.any_violated();
        reports.push_back(to_json(rep));
        if (s == a.steps) break;
        run_steps(graph, 1, oracle);
      }
    }
    r.payload["invariants"] = reports;
    const auto& last = reports.back();
    std::string line = "invariants at step " + std::to_string(last["step"].get<std::size_t>()) + ":";
    for (const auto& c : last["conditions"]) {
      line += " " + c["name"].get<std::string>() + "=" + c["status"].get<std::string>();
    }
    r.lines.push_back(line);
    if (violated) {
      r.verdict = "violated";
      r.exit = 1;
      r.lines.push_back("some step violated an invariant");
    }
  } else if (!prime) {
    run_steps(graph, a.steps, oracle);
  }
  r.payload["graph"] = to_json(graph);
  r.lines.insert(r.lines.begin(), std::to_string(graph.nodes) + " nodes, " + std::to_string(graph.labels.size()) +
                                      " edges after " + std::to_string(graph.steps) + " steps");
  if (!prime) {
    RelModel m = extract_model(graph, theta.variables(), oracle);
    r.payload["model"] = to_json(m);
    r.lines.push_back("model: " + model_text(m));
  }
  if (a.dot) {
    r.payload["dot"] = to_dot(graph);
    if (!g.json_out) r.lines.push_back(to_dot(graph));
  }
  return r;
}

Result cmd_graph(const std::string& text, bool dot, const Globals& g) {
  Term t = parse(text);
  TermGraph tg = build_term_graph(t);
  Result r;
  r.verdict = "ok";
  json edges = json::array();
  for (const auto& e : tg.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
  r.payload = {{"term", render(t)}, {"nodes", tg.nodes}, {"source", tg.source}, {"target", tg.target}, {"edges", edges}};
  if (dot) {
    r.payload["dot"] = to_dot(tg);
    if (!g.json_out) r.lines.push_back(to_dot(tg));
  } else {
    r.lines.push_back(std::to_string(tg.nodes) + " nodes, source " + std::to_string(tg.source) + ", target " +
                      std::to_string(tg.target));
    for (const auto& e : tg.edges) {
      r.lines.push_back("  " + std::to_string(e.from) + " -" + e.label + "-> " + std::to_string(e.to));
    }
  }
  return r;
}

Result cmd_reduce(const std::string& text) {
  Term t = parse(text);
  auto parts = join_free_decompose(t);
  Result r;
  r.verdict = "ok";
  json list = json::array();
  for (const auto& p : parts) {
    list.push_back(render(p));
    r.lines.push_back("  " + render(p));
  }
  r.payload = {{"term", render(t)}, {"parts", list}};
  if (parts.empty()) r.lines.push_back("  (none: the term is 0)");
  return r;
}

Result cmd_selftest(const std::vector<std::string>& names, std::uint64_t seed) {
  std::vector<std::string> chosen = names;
  if (chosen.empty()) {
    for (const auto& s : suites()) chosen.push_back(s.name);
  }
  Result r;
  json list = json::array();
  bool all = true;
  for (const auto& n : chosen) {
    auto res = run_suite(n, seed);
    all &= res.passed;
    list.push_back({{"suite", n}, {"passed", res.passed}, {"summary", res.summary}, {"details", res.details}});
    r.lines.push_back(std::string(res.passed ? "PASS " : "FAIL ") + n + ": " + res.summary);
  }
  r.verdict = all ? "ok" : "failed";
  r.exit = all ? 0 : 1;
  r.payload = {{"suites", list}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equational workbench for integral ordered monoids of relations and languages"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json_out, "Machine-readable output");
  app.add_flag("--timing", g.timing, "Report wall-clock time");
  app.add_option("--seed", g.seed, "Seed for randomized searches");
  app.add_option("--timeout", g.timeout, "Give up after SECS seconds (exit 2)");

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "Search for a derivation");
  prove_cmd->add_option("equation", pa.equation, "e.g. \"1 & x;y = 1 & y;x\"")->required();
  prove_cmd->add_option("--axioms", pa.axioms, "base, integral, integral-lang, commutative, or a -join variant");
  prove_cmd->add_option("--depth", pa.depth, "Rewrite steps, counting both directions");
  prove_cmd->add_option("--nodes", pa.nodes, "Node budget");
  prove_cmd->add_flag("--no-variants", pa.no_variants, "Use axioms only as written");

  RefuteArgs ra;
  auto* refute_cmd = app.add_subcommand("refute", "Search for a finite counterexample");
  refute_cmd->add_option("equation", ra.equation)->required();
  refute_cmd->add_option("--mode", ra.mode, "rel, rel-integral, rel-commutative or lang");
  refute_cmd->add_option("--max-base", ra.max_base, "Largest relational base");
  refute_cmd->add_option("--models", ra.random_models, "Random models after the exhaustive phase");
  refute_cmd->add_option("--max-len", ra.max_len, "Longest word (lang)");
  refute_cmd->add_option("--max-words", ra.max_words, "Words per language (lang)");

  std::string decide_eq;
  std::string fragment = "meet-comp-one";
  auto* decide_cmd = app.add_subcommand("decide", "Decide validity in all relation algebras via term graphs");
  decide_cmd->add_option("inequality", decide_eq)->required();
  decide_cmd->add_option("--fragment", fragment);

  SaturateArgs sa;
  auto* sat_cmd = app.add_subcommand("saturate", "Run the saturation construction");
  sat_cmd->add_option("--theta", sa.theta)->required();
  sat_cmd->add_option("--refute", sa.refute, "Try to refute theta <= this term");
  sat_cmd->add_option("--steps", sa.steps);
  sat_cmd->add_option("--pool-depth", sa.pool_depth);
  sat_cmd->add_flag("--dot", sa.dot);
  sat_cmd->add_flag("--check-invariants", sa.check);

  std::string graph_term;
  bool graph_dot = false;
  auto* graph_cmd = app.add_subcommand("graph", "Term graph of a join-free term");
  graph_cmd->add_option("term", graph_term)->required();
  graph_cmd->add_flag("--dot", graph_dot);

  std::string reduce_term;
  auto* reduce_cmd = app.add_subcommand("reduce", "Split a term into join-free parts");
  reduce_cmd->add_option("term", reduce_term)->required();

  std::vector<std::string> suite_names;
  auto* self_cmd = app.add_subcommand("selftest", "Run the built-in suites");
  self_cmd->add_option("--suite", suite_names, "Suite name (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  g.command = app.get_subcommands().front()->get_name();
  start_watchdog(g);
  auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    if (*prove_cmd) {
      r = cmd_prove(pa);
    } else if (*refute_cmd) {
      r = cmd_refute(ra, g.seed);
    } else if (*decide_cmd) {
      r = cmd_decide(decide_eq, fragment);
    } else if (*sat_cmd) {
      r = cmd_saturate(sa, g);
    } else if (*graph_cmd) {
      r = cmd_graph(graph_term, graph_dot, g);
    } else if (*reduce_cmd) {
      r = cmd_reduce(reduce_term);
    } else {
      r = cmd_selftest(suite_names, g.seed);
    }
  } catch (const std::exception& e) {
    r = Result{};
    r.verdict = "error";
    r.payload["error"] = e.what();
    r.lines.push_back(std::string("error: ") + e.what());
    r.exit = 1;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(g, r, seconds);
  return r.exit;
}
