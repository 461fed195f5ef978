#include "omrel/prover.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "omrel/parallel.hpp"
#include "rules.hpp"

namespace omrel {

using detail::Binding;
using detail::Rule;

namespace {

struct StepRef {
  std::uint32_t rule = 0;
  Binding binding;
  std::vector<std::size_t> path;  // innermost index first while building
  Focus focus;
};

struct Candidate {
  Term result;
  StepRef step;
};

void collect_subterms(const Term& t, std::unordered_set<Term, TermHash>& out) {
  if (!out.insert(t).second) return;
  for (const auto& c : t.children()) collect_subterms(c, out);
}

class Rewriter {
 public:
  Rewriter(const std::vector<Rule>& rules, const std::vector<Term>& pool, bool unrestricted,
           std::size_t max_size)
      : rules_(rules), pool_(pool), unrestricted_(unrestricted), max_size_(max_size) {}

  std::vector<Candidate> all(const Term& t) const {
    std::vector<Term> pool = pool_;
    if (unrestricted_) {
      std::unordered_set<Term, TermHash> subs(pool.begin(), pool.end());
      collect_subterms(t, subs);
      pool.assign(subs.begin(), subs.end());
      std::sort(pool.begin(), pool.end());
    }
    std::vector<Candidate> raw = below(t, pool);
    std::vector<Candidate> out;
    std::unordered_set<Term, TermHash> seen{t};
    for (auto& c : raw) {
      if (max_size_ && c.result.size() > max_size_) continue;
      if (!seen.insert(c.result).second) continue;
      std::reverse(c.step.path.begin(), c.step.path.end());
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  std::vector<Candidate> below(const Term& s, const std::vector<Term>& pool) const {
    std::vector<Candidate> out;
    at_site(s, pool, out);
    auto kids = s.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (auto& c : below(kids[i], pool)) {
        c.result = detail::with_child(s, i, c.result);
        c.step.path.push_back(i);
        out.push_back(std::move(c));
      }
    }
    return out;
  }

  void at_site(const Term& s, const std::vector<Term>& pool, std::vector<Candidate>& out) const {
    for (std::uint32_t r = 0; r < rules_.size(); ++r) {
      const Rule& rule = rules_[r];
      Binding b;
      detail::match_site(rule.from, s, b, [&](const Binding& m, const Focus& f) {
        emit(s, r, m, f, 0, pool, out);
      });
    }
  }

  void emit(const Term& s, std::uint32_t r, Binding b, const Focus& f, std::size_t extra,
            const std::vector<Term>& pool, std::vector<Candidate>& out) const {
    const Rule& rule = rules_[r];
    if (extra < rule.extra.size()) {
      int v = rule.extra[extra];
      for (const auto& p : pool) {
        b.value[v] = p;
        b.bound |= 1U << v;
        emit(s, r, b, f, extra + 1, pool, out);
      }
      return;
    }
    Term replacement = detail::instantiate(rule.to, b);
    Term result = detail::replace_focus(s, f, replacement);
    if (result == s) return;
    Candidate c;
    c.result = std::move(result);
    c.step.rule = r;
    c.step.binding = b;
    c.step.focus = f;
    out.push_back(std::move(c));
  }

  const std::vector<Rule>& rules_;
  const std::vector<Term>& pool_;
  bool unrestricted_;
  std::size_t max_size_;
};

ProofStep to_step(const std::vector<Rule>& rules, const StepRef& ref) {
  const Rule& rule = rules[ref.rule];
  ProofStep s;
  s.path = ref.path;
  s.focus = ref.focus;
  s.axiom = rule.axiom->id;
  s.direction = rule.direction;
  for (const auto& [name, pattern] : rule.base_instance) {
    s.substitution[name] = detail::instantiate(pattern, ref.binding);
  }
  return s;
}

struct Visit {
  Term parent;
  StepRef step;
  bool root = false;
};

using Seen = std::unordered_map<Term, Visit, TermHash>;

ProofTrace assemble(const std::vector<Rule>& rules, const Seen& fwd, const Seen& bwd, const Term& meet) {
  ProofTrace trace;
  std::vector<Term> left{meet};
  std::vector<ProofStep> left_steps;
  for (Term t = meet; !fwd.at(t).root; t = fwd.at(t).parent) {
    left_steps.push_back(to_step(rules, fwd.at(t).step));
    left.push_back(fwd.at(t).parent);
  }
  std::reverse(left.begin(), left.end());
  std::reverse(left_steps.begin(), left_steps.end());
  trace.terms = std::move(left);
  trace.steps = std::move(left_steps);
  for (Term t = meet; !bwd.at(t).root; t = bwd.at(t).parent) {
    ProofStep s = to_step(rules, bwd.at(t).step);
    s.backward = true;
    trace.steps.push_back(std::move(s));
    trace.terms.push_back(bwd.at(t).parent);
  }
  return trace;
}

}  // namespace

std::string to_string(ProofStatus s) { return s == ProofStatus::Proved ? "proved" : "unknown"; }

std::vector<Term> instance_pool(const std::vector<Term>& terms) {
  std::unordered_set<Term, TermHash> subs{Term::zero(), Term::ide()};
  for (const auto& t : terms) collect_subterms(t, subs);
  std::vector<Term> out(subs.begin(), subs.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rewrite> one_step_rewrites(const Term& t, AxiomSet set, const std::vector<Term>& pool,
                                       const ProofBudget& options) {
  auto rules = detail::compile_rules(set, options.instance_variants);
  Rewriter rw(rules, pool, options.unrestricted_instances, 0);
  std::vector<Rewrite> out;
  for (auto& c : rw.all(t)) out.push_back({c.result, to_step(rules, c.step)});
  return out;
}

ProofOutcome prove(const Equation& goal, AxiomSet set, const ProofBudget& budget) {
  if (budget.max_depth < 0 || budget.max_nodes == 0) {
    throw std::invalid_argument("proof budget must be positive");
  }
  Equation eq = goal.desugared().normalized();
  ProofOutcome outcome;
  if (eq.lhs == eq.rhs) {
    outcome.status = ProofStatus::Proved;
    outcome.trace.terms = {eq.lhs};
    outcome.stats.nodes_seen = 1;
    return outcome;
  }

  const auto rules = detail::compile_rules(set, budget.instance_variants);
  const auto pool = instance_pool({eq.lhs, eq.rhs});
  const std::size_t max_size = std::max(eq.lhs.size(), eq.rhs.size()) + budget.size_slack;
  const Rewriter rw(rules, pool, budget.unrestricted_instances, max_size);

  Seen seen[2];
  seen[0][eq.lhs] = Visit{Term(), StepRef{}, true};
  seen[1][eq.rhs] = Visit{Term(), StepRef{}, true};
  std::vector<Term> frontier[2] = {{eq.lhs}, {eq.rhs}};
  constexpr std::size_t kChunk = 256;

  for (int level = 0; level < budget.max_depth; ++level) {
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    if (frontier[side].empty()) break;  // that side is saturated
    std::vector<Term> next;
    const auto& cur = frontier[side];
    for (std::size_t base = 0; base < cur.size(); base += kChunk) {
      std::size_t n = std::min(kChunk, cur.size() - base);
      std::vector<std::vector<Candidate>> results(n);
      parallel_for(n, [&](std::size_t i) { results[i] = rw.all(cur[base + i]); }, 4);
      outcome.stats.nodes_expanded += n;
      for (std::size_t i = 0; i < n; ++i) {
        for (auto& c : results[i]) {
          auto [it, fresh] = seen[side].try_emplace(c.result, Visit{cur[base + i], std::move(c.step), false});
          if (!fresh) continue;
          if (seen[1 - side].count(c.result)) {
            outcome.status = ProofStatus::Proved;
            outcome.trace = assemble(rules, seen[0], seen[1], c.result);
            outcome.stats.depth_reached = level + 1;
            outcome.stats.nodes_seen = seen[0].size() + seen[1].size();
            return outcome;
          }
          next.push_back(c.result);
          if (seen[0].size() + seen[1].size() >= budget.max_nodes) {
            outcome.stats.node_budget_hit = true;
            outcome.stats.depth_reached = level + 1;
            outcome.stats.nodes_seen = seen[0].size() + seen[1].size();
            return outcome;
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier[side] = std::move(next);
    outcome.stats.depth_reached = level + 1;
  }
  outcome.stats.nodes_seen = seen[0].size() + seen[1].size();
  return outcome;
}

ProofOutcome prove_leq(const Term& a, const Term& b, AxiomSet set, const ProofBudget& budget) {
  return prove(Equation{a, b, Relation::Leq}, set, budget);
}

}  // namespace omrel
