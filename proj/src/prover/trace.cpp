#include <stdexcept>

#include "omrel/prover.hpp"
#include "rules.hpp"

namespace omrel {

namespace {

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = s.find(t.name());
      if (it == s.end()) throw std::invalid_argument("substitution misses metavariable " + t.name());
      return it->second;
    }
    case Kind::Zero:
    case Kind::Ide:
      return t;
    default:
      break;
  }
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(substitute(c, s));
  if (t.kind() == Kind::Meet) return Term::meet(std::move(kids));
  if (t.kind() == Kind::Join) return Term::join(std::move(kids));
  return Term::comp(std::move(kids));
}

Term rewrite_at(const Term& t, std::span<const std::size_t> path, const ProofStep& step) {
  if (!path.empty()) {
    if (path[0] >= t.children().size()) throw std::invalid_argument("step path leaves the term");
    return detail::with_child(t, path[0], rewrite_at(t.children()[path[0]], path.subspan(1), step));
  }
  const Axiom& ax = axiom_by_id(step.axiom);
  bool ltr = step.direction == Direction::LeftToRight;
  const Term& from = ltr ? ax.eq.lhs : ax.eq.rhs;
  const Term& to = ltr ? ax.eq.rhs : ax.eq.lhs;
  if (!(substitute(from, step.substitution) == detail::focus_term(t, step.focus))) {
    throw std::invalid_argument("axiom " + step.axiom + " does not match at the focus");
  }
  return detail::replace_focus(t, step.focus, substitute(to, step.substitution));
}

}  // namespace

Term apply_step(const Term& source, const ProofStep& step) {
  return rewrite_at(source, step.path, step);
}

bool replay(const ProofTrace& trace, const Equation& goal, AxiomSet set, std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };
  Equation eq = goal.desugared().normalized();
  if (trace.terms.empty() || trace.terms.size() != trace.steps.size() + 1) {
    return fail("trace has " + std::to_string(trace.terms.size()) + " terms for " +
                std::to_string(trace.steps.size()) + " steps");
  }
  if (!(trace.terms.front() == eq.lhs)) return fail("trace does not start at the left side");
  if (!(trace.terms.back() == eq.rhs)) return fail("trace does not end at the right side");
  const auto& allowed = axiom_list(set);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const ProofStep& s = trace.steps[i];
    bool known = false;
    for (const auto& a : allowed) known = known || a.id == s.axiom;
    if (!known) return fail("step " + std::to_string(i) + " uses " + s.axiom + " outside the axiom set");
    const Term& src = s.backward ? trace.terms[i + 1] : trace.terms[i];
    const Term& dst = s.backward ? trace.terms[i] : trace.terms[i + 1];
    try {
      if (!(apply_step(src, s) == dst)) return fail("step " + std::to_string(i) + " produces a different term");
    } catch (const std::exception& e) {
      return fail("step " + std::to_string(i) + ": " + e.what());
    }
  }
  return true;
}

}  // namespace omrel
