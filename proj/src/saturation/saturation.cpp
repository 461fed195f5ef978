#include "omrel/saturation.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace omrel {

namespace {

std::vector<std::string> merged_vars(std::initializer_list<std::vector<std::string>> lists) {
  std::set<std::string> all;
  for (const auto& l : lists) all.insert(l.begin(), l.end());
  return {all.begin(), all.end()};
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  auto kids = t.children();
  for (const auto& k : kids) collect_subterms(k, out);
  if (t.kind() == Kind::Comp) {
    for (std::size_t b = 0; b < kids.size(); ++b) {
      for (std::size_t e = b + 2; e <= kids.size(); ++e) {
        if (e - b == kids.size()) continue;
        out.insert(Term::comp(std::vector<Term>(kids.begin() + b, kids.begin() + e)));
      }
    }
  }
}

bool nonempty(const Term& t, const RelModel& m) { return !eval_rel(t, m).empty(); }

bool below_ide(const Term& t, const RelModel& m) {
  return eval_rel(t, m).subset_of(eval_rel(Term::ide(), m));
}

std::string edge_name(std::size_t u, std::size_t v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

std::vector<std::string> graph_vars(const SatGraph& g) {
  std::set<std::string> all;
  for (const auto& v : g.theta.variables()) all.insert(v);
  for (const auto& [e, f] : g.labels) {
    for (const auto& c : f.cores) {
      for (const auto& v : c.variables()) all.insert(v);
    }
  }
  for (const auto& p : g.basis.pool) {
    for (const auto& v : p.variables()) all.insert(v);
  }
  return {all.begin(), all.end()};
}

std::vector<Task> tasks_of(std::size_t u, std::size_t v, const FilterDescriptor& f) {
  std::vector<Task> out;
  for (const auto& core : f.cores) {
    for (const auto& c : conjuncts(core)) {
      if (c.kind() != Kind::Comp) continue;
      auto kids = c.children();
      out.push_back({u, v, kids[0], Term::comp(std::vector<Term>(kids.begin() + 1, kids.end()))});
    }
  }
  return out;
}

void enqueue(SatGraph& g, std::size_t u, std::size_t v) {
  for (auto& t : tasks_of(u, v, g.labels.at({u, v}))) {
    if (std::find(g.queue.begin(), g.queue.end(), t) == g.queue.end()) g.queue.push_back(std::move(t));
  }
}

std::string render_task(const Task& t) {
  return edge_name(t.u, t.v) + " " + render(t.tau) + " ; " + render(t.sigma);
}

}  // namespace

// --- models -------------------------------------------------------------------

ModelPool::ModelPool(std::vector<std::string> vars, std::uint64_t seed) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  const std::size_t k = vars.size();
  // Valuations by unions of translations of a cyclic group; all integral.
  auto family = [&](std::size_t n, const std::vector<std::vector<std::size_t>>& choices) {
    std::vector<RelModel> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= choices.size();
    for (std::size_t code = 0; code < count; ++code) {
      RelModel m;
      m.base = n;
      std::size_t c = code;
      for (const auto& v : vars) {
        m.vars[v] = group_relation(n, choices[c % choices.size()]);
        c /= choices.size();
      }
      out.push_back(std::move(m));
    }
    return out;
  };
  std::vector<RelModel> z1 = family(1, {{}, {0}});
  std::vector<RelModel> rest = family(2, {{}, {0}, {1}, {0, 1}});
  auto z3 = family(3, {{0}, {1}, {2}});
  rest.insert(rest.end(), z3.begin(), z3.end());
  constexpr std::size_t kMaxModels = 256;
  if (z1.size() + rest.size() > kMaxModels) {
    std::mt19937_64 rng(seed);
    std::shuffle(rest.begin(), rest.end(), rng);
    rest.resize(kMaxModels > z1.size() ? kMaxModels - z1.size() : 0);
  }
  models_ = std::move(z1);
  models_.insert(models_.end(), rest.begin(), rest.end());
}

bool ModelPool::consistent_leq(const Term& a, const Term& b) const {
  auto vars = merged_vars({a.variables(), b.variables()});
  for (const auto& m : models_) {
    RelModel mm = m.with_vars(vars);
    if (!eval_rel(a, mm).subset_of(eval_rel(b, mm))) return false;
  }
  return true;
}

// --- oracle -------------------------------------------------------------------

Oracle::Oracle(AxiomSet set, SaturationBudget budget, std::vector<std::string> vars)
    : set_(set), budget_(budget), models_(std::move(vars)) {
  // lang-split fails in group relations, so their models say nothing there.
  if (set_ == AxiomSet::IntegralLang) budget_.semantic_filter = false;
}

bool Oracle::leq(const Term& a, const Term& b) { return query(Equation{a, b, Relation::Leq}); }

bool Oracle::equal(const Term& a, const Term& b) { return query(Equation{a, b, Relation::Eq}); }

const ProofTrace* Oracle::trace(const Equation& eq) const {
  auto it = cache_.find(eq.normalized());
  if (it == cache_.end() || !it->second) return nullptr;
  return &*it->second;
}

bool Oracle::query(const Equation& raw) {
  Equation eq = raw.normalized();
  ++stats_.queries;
  if (auto it = cache_.find(eq); it != cache_.end()) {
    ++stats_.cache_hits;
    return it->second.has_value();
  }
  if (budget_.semantic_filter) {
    bool ok = models_.consistent_leq(eq.lhs, eq.rhs);
    if (ok && eq.relation == Relation::Eq) ok = models_.consistent_leq(eq.rhs, eq.lhs);
    if (!ok) {
      ++stats_.filtered;
      cache_.emplace(eq, std::nullopt);
      return false;
    }
  }
  ++stats_.prover_calls;
  auto outcome = prove(eq, set_, budget_.proof);
  if (outcome.proved()) {
    ++stats_.proved;
    cache_.emplace(eq, std::move(outcome.trace));
    return true;
  }
  cache_.emplace(eq, std::nullopt);
  return false;
}

// --- filters ------------------------------------------------------------------

Term SubidentityBasis::epsilon() const {
  std::vector<Term> all = generators;
  all.insert(all.end(), derived.begin(), derived.end());
  all.push_back(Term::ide());
  return Term::meet(all);
}

SubidentityBasis build_basis(const Term& theta_in, Oracle& oracle, int pool_depth) {
  Term theta = normalize(theta_in);
  if (theta.has_join()) throw std::invalid_argument("theta contains a join: " + render(theta));
  if (theta.is_zero()) throw std::invalid_argument("theta is 0");
  if (prove(Equation{theta, Term::zero(), Relation::Eq}, oracle.axioms(), oracle.budget().proof).proved()) {
    throw std::invalid_argument("theta = 0 is provable: " + render(theta));
  }
  SubidentityBasis b;
  b.theta = theta;

  std::set<Term> subs;
  collect_subterms(theta, subs);
  std::set<Term> products(subs.begin(), subs.end());
  std::vector<Term> layer(subs.begin(), subs.end());
  for (int d = 2; d <= pool_depth; ++d) {
    std::vector<Term> next;
    for (const auto& p : layer) {
      for (const auto& s : subs) {
        Term c = Term::comp(p, s);
        if (products.insert(c).second) next.push_back(c);
      }
    }
    layer = std::move(next);
  }
  std::set<Term> pool{Term::ide()};
  for (const auto& r : products) pool.insert(Term::meet(Term::ide(), r));
  b.pool.assign(pool.begin(), pool.end());

  std::set<Term> gens{Term::ide()};
  for (const auto& eps : b.pool) {
    if (eps.is_ide()) continue;
    Equation eq{Term::comp(eps, theta), theta, Relation::Eq};
    if (oracle.equal(eq.lhs, eq.rhs)) {
      gens.insert(eps);
      if (const auto* t = oracle.trace(eq)) b.proofs.emplace(eps, *t);
    }
  }
  // Meets of generators are generators again.
  std::vector<Term> base(gens.begin(), gens.end());
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) gens.insert(Term::meet(base[i], base[j]));
  }
  b.generators.assign(gens.begin(), gens.end());
  return b;
}

FilterDescriptor FilterDescriptor::of(std::vector<Term> cores) {
  if (cores.empty()) throw std::invalid_argument("filter descriptor without cores");
  std::sort(cores.begin(), cores.end());
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
  return FilterDescriptor{std::move(cores)};
}

bool FilterDescriptor::add(const Term& core) {
  auto it = std::lower_bound(cores.begin(), cores.end(), core);
  if (it != cores.end() && *it == core) return false;
  cores.insert(it, core);
  return true;
}

Membership membership(const Term& sigma, const FilterDescriptor& f, const SubidentityBasis& basis,
                      Oracle& oracle) {
  Term eps = basis.epsilon();
  std::set<Term> known;
  for (const auto& c : f.cores) {
    for (const auto& k : conjuncts(c)) known.insert(k);
  }
  if (f.is_e()) {
    for (const auto& k : conjuncts(eps)) known.insert(k);
  }
  auto wanted = conjuncts(sigma);
  if (std::all_of(wanted.begin(), wanted.end(), [&](const Term& t) { return known.count(t) > 0; })) {
    return Membership::Member;
  }
  Term lhs = f.is_e() ? eps : Term::comp({eps, f.core_meet(), eps});
  if (lhs == sigma) return Membership::Member;
  return oracle.leq(lhs, sigma) ? Membership::Member : Membership::Unknown;
}

// --- construction -------------------------------------------------------------

SatGraph init_graph(const Term& theta, SubidentityBasis basis, Oracle& oracle) {
  SatGraph g;
  g.theta = normalize(theta);
  g.basis = std::move(basis);
  bool merged = oracle.leq(g.theta, Term::ide());
  if (merged) {
    // theta;theta = theta for subidentities, so theta lies in E itself.
    g.basis.derived.push_back(g.theta);
    g.nodes = 1;
    g.labels[{0, 0}] = FilterDescriptor::e();
  } else {
    g.nodes = 2;
    g.v0 = 1;
    g.labels[{0, 0}] = FilterDescriptor::e();
    g.labels[{1, 1}] = FilterDescriptor::e();
    g.labels[{0, 1}] = FilterDescriptor::of({g.theta});
    enqueue(g, 0, 1);
  }
  for (const auto& [e, f] : g.labels) g.witnesses.insert(e);
  g.log.push_back({0, "init", merged ? "theta <= 1: single node" : "two nodes"});
  return g;
}

void apply_step(SatGraph& g, const Task& task, Oracle& oracle) {
  const std::size_t step = g.steps;
  g.processed.insert(task);
  auto label = g.labels.find({task.u, task.v});
  if (label == g.labels.end()) throw std::logic_error("task on a missing edge " + edge_name(task.u, task.v));
  Term product = Term::comp(task.tau, task.sigma);
  if (membership(product, label->second, g.basis, oracle) != Membership::Member) {
    g.log.push_back({step, "skip", render_task(task)});
    return;
  }
  for (std::size_t z = 0; z < g.nodes; ++z) {
    auto a = g.labels.find({task.u, z});
    auto b = g.labels.find({z, task.v});
    if (a == g.labels.end() || b == g.labels.end()) continue;
    if (membership(task.tau, a->second, g.basis, oracle) == Membership::Member &&
        membership(task.sigma, b->second, g.basis, oracle) == Membership::Member) {
      g.log.push_back({step, "witnessed", render_task(task) + " via " + std::to_string(z)});
      return;
    }
  }
  const FilterDescriptor e = FilterDescriptor::e();
  auto absorbs = [&](const Term& t) {
    return membership(Term::ide(), FilterDescriptor::of({t}), g.basis, oracle) == Membership::Member;
  };
  if (absorbs(task.tau) || absorbs(task.sigma)) {
    bool left = absorbs(task.tau);
    const Term& unit = left ? task.tau : task.sigma;
    const Term& kept = left ? task.sigma : task.tau;
    g.basis.derived.push_back(Term::meet(Term::ide(), unit));
    if (g.labels.at({task.u, task.v}).add(kept)) enqueue(g, task.u, task.v);
    g.log.push_back({step, "absorb", render_task(task) + " keeps " + render(kept)});
    return;
  }

  const std::size_t w = g.nodes++;
  std::map<Edge, FilterDescriptor> fresh;
  fresh[{w, w}] = e;
  for (const auto& [edge, f] : g.labels) {
    if (edge.second == task.u) fresh[{edge.first, w}] = FilterDescriptor::of({Term::comp(f.core_meet(), task.tau)});
    if (edge.first == task.v) fresh[{w, edge.second}] = FilterDescriptor::of({Term::comp(task.sigma, f.core_meet())});
  }
  for (auto& [edge, f] : fresh) g.labels[edge] = std::move(f);
  for (const auto& [edge, f] : fresh) {
    if (edge.first != edge.second) enqueue(g, edge.first, edge.second);
  }
  g.witnesses.insert({task.u, w});
  g.witnesses.insert({w, task.v});
  g.witnesses.insert({w, w});
  g.log.push_back({step, "split", render_task(task) + " new node " + std::to_string(w)});
}

void run_steps(SatGraph& g, std::size_t steps, Oracle& oracle) {
  for (std::size_t i = 0; i < steps; ++i) {
    ++g.steps;
    if (g.queue.empty()) {
      g.log.push_back({g.steps, "idle", ""});
      continue;
    }
    Task t = g.queue.front();
    g.queue.pop_front();
    g.queue.push_back(t);
    apply_step(g, t, oracle);
  }
}

SatGraph run(const Term& theta, std::size_t steps, Oracle& oracle, int pool_depth) {
  SatGraph g = init_graph(theta, build_basis(theta, oracle, pool_depth), oracle);
  run_steps(g, steps, oracle);
  return g;
}

// --- invariants ---------------------------------------------------------------

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "holds";
    case Status::Violated:
      return "violated";
    case Status::Unknown:
      return "unknown";
  }
  return "?";
}

bool InvariantReport::any_violated() const {
  return std::any_of(conditions.begin(), conditions.end(),
                     [](const ConditionReport& c) { return c.status == Status::Violated; });
}

namespace {

class Checker {
 public:
  Checker(const SatGraph& g, Oracle& oracle) : g_(g), oracle_(oracle), vars_(graph_vars(g)) {}

  ConditionReport rt() {
    ConditionReport r = named("RT");
    for (std::size_t n = 0; n < g_.nodes; ++n) {
      if (!g_.has_edge(n, n)) return violated(r, "missing loop " + edge_name(n, n));
    }
    for (const auto& [a, fa] : g_.labels) {
      for (std::size_t c = 0; c < g_.nodes; ++c) {
        if (g_.has_edge(a.second, c) && !g_.has_edge(a.first, c)) {
          return violated(r, "missing " + edge_name(a.first, c) + " after " + edge_name(a.first, a.second) +
                                 " and " + edge_name(a.second, c));
        }
      }
    }
    return r;
  }

  ConditionReport gen() {
    ConditionReport r = named("Gen");
    std::set<Edge> closure = g_.witnesses;
    for (const auto& e : g_.witnesses) {
      if (!g_.labels.count(e)) return violated(r, "witness " + edge_name(e.first, e.second) + " is not an edge");
    }
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<Edge> add;
      for (const auto& a : closure) {
        for (const auto& b : closure) {
          if (a.second == b.first && !closure.count({a.first, b.second})) add.push_back({a.first, b.second});
        }
      }
      for (const auto& e : add) grew |= closure.insert(e).second;
    }
    for (const auto& [e, f] : g_.labels) {
      if (!closure.count(e)) return violated(r, "edge " + edge_name(e.first, e.second) + " not generated");
    }
    return r;
  }

  ConditionReport fun() {
    ConditionReport r = named("Fun");
    for (const auto& [e, f] : g_.labels) {
      if (membership(Term::zero(), f, g_.basis, oracle_) == Membership::Member) {
        return violated(r, "0 in label of " + edge_name(e.first, e.second));
      }
      Term rho = f.core_meet();
      if (!certify([&](const RelModel& m) { return nonempty(rho, m); })) ++r.unknowns;
    }
    return settle(r);
  }

  ConditionReport dr() {
    ConditionReport r = named("DR");
    const FilterDescriptor e = FilterDescriptor::e();
    for (std::size_t n = 0; n < g_.nodes; ++n) {
      auto it = g_.labels.find({n, n});
      if (it != g_.labels.end() && !(it->second == e)) return violated(r, "loop " + edge_name(n, n) + " is not E");
    }
    for (const auto& [edge, f] : g_.labels) {
      for (const auto& sigma : f.cores) {
        for (const auto& eps : g_.basis.pool) {
          if (!oracle_.equal(Term::comp(eps, sigma), sigma)) continue;
          if (membership(eps, e, g_.basis, oracle_) == Membership::Member) continue;
          if (auto m = certify_model([&](const RelModel& mm) { return eval_rel(eps, mm).empty(); })) {
            return violated(r, render(eps) + " in E(" + render(sigma) + ") but not in E");
          }
          ++r.unknowns;
        }
      }
    }
    return settle(r);
  }

  ConditionReport comp() {
    ConditionReport r = named("Comp");
    Term eps = g_.basis.epsilon();
    for (const auto& [a, fa] : g_.labels) {
      if (a.first == a.second) continue;
      for (const auto& [b, fb] : g_.labels) {
        if (b.first != a.second || b.first == b.second) continue;
        auto target = g_.labels.find({a.first, b.second});
        if (target == g_.labels.end()) return violated(r, "no edge " + edge_name(a.first, b.second));
        Term g1 = fa.core_meet();
        Term g2 = fb.core_meet();
        Term product = Term::comp({eps, g1, eps, g2, eps});
        if (membership(product, target->second, g_.basis, oracle_) == Membership::Member) continue;
        Term rho = target->second.core_meet();
        Term plain = Term::comp(g1, g2);
        if (certify_model([&](const RelModel& m) { return !eval_rel(rho, m).subset_of(eval_rel(plain, m)); })) {
          return violated(r, render(plain) + " not in label of " + edge_name(a.first, b.second));
        }
        ++r.unknowns;
      }
    }
    return settle(r);
  }

  ConditionReport ide() {
    ConditionReport r = named("Ide");
    for (const auto& w : g_.witnesses) {
      if (w.first == w.second) continue;
      const auto& f = g_.labels.at(w);
      if (membership(Term::ide(), f, g_.basis, oracle_) == Membership::Member) {
        return violated(r, "1 in label of witness " + edge_name(w.first, w.second));
      }
      Term rho = f.core_meet();
      if (!certify([&](const RelModel& m) { return !below_ide(rho, m); })) ++r.unknowns;
    }
    return settle(r);
  }

 private:
  static ConditionReport named(std::string name) {
    ConditionReport r;
    r.name = std::move(name);
    return r;
  }
  static ConditionReport violated(ConditionReport r, std::string why) {
    r.status = Status::Violated;
    r.witness = std::move(why);
    return r;
  }
  static ConditionReport settle(ConditionReport r) {
    if (r.status == Status::Holds && r.unknowns > 0) r.status = Status::Unknown;
    return r;
  }

  // An integral model with theta nonempty sends every element of E to the
  // identity, so label filters read there as plain terms.
  template <class Pred>
  std::optional<RelModel> certify_model(Pred pred) {
    return oracle_.models().find(vars_, [&](const RelModel& m) { return nonempty(g_.theta, m) && pred(m); });
  }
  template <class Pred>
  bool certify(Pred pred) {
    return certify_model(pred).has_value();
  }

  const SatGraph& g_;
  Oracle& oracle_;
  std::vector<std::string> vars_;
};

}  // namespace

InvariantReport check_invariants(const SatGraph& g, Oracle& oracle) {
  Checker c(g, oracle);
  InvariantReport r;
  r.step = g.steps;
  r.conditions = {c.rt(), c.gen(), c.fun(), c.dr(), c.comp(), c.ide()};
  std::set<Task> open(g.queue.begin(), g.queue.end());
  for (const auto& t : open) r.open_defects += g.processed.count(t) == 0;
  return r;
}

// --- models from graphs -------------------------------------------------------

RelModel extract_model(const SatGraph& g, const std::vector<std::string>& vars, Oracle& oracle) {
  RelModel m;
  m.base = g.nodes;
  for (const auto& x : vars) {
    BitRel r(g.nodes);
    Term t = Term::var(x);
    for (const auto& [e, f] : g.labels) {
      if (membership(t, f, g.basis, oracle) == Membership::Member) r.set(e.first, e.second);
    }
    m.vars[x] = std::move(r);
  }
  return m;
}

RefuteResult refute(const Term& theta, const Term& theta_prime, std::size_t steps, Oracle& oracle,
                    int pool_depth) {
  RefuteResult out;
  out.graph = run(theta, steps, oracle, pool_depth);
  const SatGraph& g = out.graph;
  auto vars = merged_vars({theta.variables(), theta_prime.variables()});
  RelModel m = extract_model(g, vars, oracle);
  std::ostringstream diag;
  diag << g.nodes << " nodes after " << g.steps << " steps";
  bool in_lhs = eval_rel(theta, m).test(g.u0, g.v0);
  bool in_rhs = eval_rel(theta_prime, m).test(g.u0, g.v0);
  Tri integral = is_integral_model(m);
  if (!in_lhs) diag << "; (u0, v0) not in theta";
  if (in_rhs) diag << "; (u0, v0) in theta'";
  if (integral != Tri::True) diag << "; integrality " << to_string(integral);
  if (in_lhs && !in_rhs && integral == Tri::True) {
    CounterexampleReport rep;
    rep.equation = Equation{normalize(theta), normalize(theta_prime), Relation::Leq};
    rep.model = m;
    rep.witness = std::make_pair(g.u0, g.v0);
    rep.witness_in_lhs = true;
    rep.mode = SearchMode::Integral;
    if (rep.verify()) {
      out.report = std::move(rep);
    } else {
      diag << "; report failed verification";
    }
  }
  out.diagnostics = diag.str();
  return out;
}

std::string to_dot(const SatGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t n = 0; n < g.nodes; ++n) {
    out << "  n" << n << " [label=\"" << n << "\"";
    if (n == g.u0 && n == g.v0) {
      out << ", shape=diamond, peripheries=2";
    } else if (n == g.u0) {
      out << ", shape=diamond";
    } else if (n == g.v0) {
      out << ", shape=doublecircle";
    }
    out << "];\n";
  }
  for (const auto& [e, f] : g.labels) {
    std::string text;
    for (const auto& c : f.cores) text += (text.empty() ? "" : ", ") + render(c);
    std::vector<std::string> style;
    if (g.witnesses.count(e)) style.push_back("bold");
    if (e.first == e.second) style.push_back("dashed");
    out << "  n" << e.first << " -> n" << e.second << " [label=\"" << text << "\"";
    if (!style.empty()) {
      out << ", style=\"" << style[0];
      for (std::size_t i = 1; i < style.size(); ++i) out << "," << style[i];
      out << "\"";
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace omrel
