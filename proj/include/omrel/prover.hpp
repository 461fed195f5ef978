#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "omrel/axioms.hpp"
#include "omrel/term.hpp"

namespace omrel {

struct ProofBudget {
  int max_depth = 8;  // rewrite steps, both directions together
  std::size_t max_nodes = 200000;
  /// Intermediate terms may exceed the larger goal side by this many nodes.
  std::size_t size_slack = 4;
  /// Also rewrite with instances of the axioms that identify two
  /// metavariables or set one to 1; normal forms hide these otherwise.
  bool instance_variants = true;
  /// Metavariables absent from the matched side are instantiated from the
  /// subterms of the goal plus 0 and 1. This adds the subterms of the term
  /// being rewritten.
  bool unrestricted_instances = false;
};

enum class Direction { LeftToRight, RightToLeft };

/// Where a step rewrites inside the subterm at `path`: the whole subterm,
/// a subset of a meet's or join's children, or a window [first, second) of a
/// composition's children.
struct Focus {
  enum class Kind { Whole, Subset, Window };
  Kind kind = Kind::Whole;
  std::vector<std::size_t> indices;

  friend bool operator==(const Focus&, const Focus&) = default;
};

struct ProofStep {
  std::vector<std::size_t> path;
  Focus focus;
  std::string axiom;
  Direction direction = Direction::LeftToRight;
  /// Over the metavariables of the axiom.
  std::map<std::string, Term> substitution;
  /// Applied to the later term of the trace, producing the earlier one.
  bool backward = false;
};

/// terms[i] rewrites to terms[i + 1] by steps[i].
struct ProofTrace {
  std::vector<Term> terms;
  std::vector<ProofStep> steps;
};

struct ProofStats {
  std::size_t nodes_expanded = 0;
  std::size_t nodes_seen = 0;
  int depth_reached = 0;
  bool node_budget_hit = false;
};

enum class ProofStatus { Proved, Unknown };
std::string to_string(ProofStatus s);

struct ProofOutcome {
  ProofStatus status = ProofStatus::Unknown;
  ProofTrace trace;
  ProofStats stats;
  bool proved() const { return status == ProofStatus::Proved; }
};

/// Bidirectional breadth-first rewriting search. Never answers "no".
ProofOutcome prove(const Equation& eq, AxiomSet set, const ProofBudget& budget = {});
/// a <= b, i.e. a & b = a.
ProofOutcome prove_leq(const Term& a, const Term& b, AxiomSet set, const ProofBudget& budget = {});

struct Rewrite {
  Term result;
  ProofStep step;
};

/// Every single-step rewrite of `t`, in a deterministic order. `pool`
/// supplies instances for metavariables that the matched side leaves open.
std::vector<Rewrite> one_step_rewrites(const Term& t, AxiomSet set, const std::vector<Term>& pool,
                                       const ProofBudget& options = {});

/// Distinct subterms of the given terms plus 0 and 1, sorted.
std::vector<Term> instance_pool(const std::vector<Term>& terms);

/// Rewrites `source` by `step` (ignoring `step.backward`) using only the
/// axiom text and plain substitution. Throws std::invalid_argument when the
/// instantiated axiom side does not match the focus.
Term apply_step(const Term& source, const ProofStep& step);

/// Checks the trace step by step against `goal` (desugared and normalized
/// before comparison), accepting only axioms of `set`. On failure returns
/// false and fills `error`.
bool replay(const ProofTrace& trace, const Equation& goal, AxiomSet set,
            std::string* error = nullptr);

}  // namespace omrel
