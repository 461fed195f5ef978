#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omrel/model.hpp"
#include "omrel/prover.hpp"
#include "omrel/term.hpp"

namespace omrel {

struct SaturationBudget {
  ProofBudget proof = default_proof_budget();
  /// Pool candidates are 1 & r for r a composition of up to this many
  /// subterms of theta.
  int pool_depth = 2;
  /// Skip prover calls for inequalities that fail in a known integral model.
  bool semantic_filter = true;

  static ProofBudget default_proof_budget() {
    ProofBudget b;
    b.max_depth = 4;
    b.max_nodes = 3000;
    return b;
  }
};

/// Integral models (group relations) used to discard queries the prover can
/// never prove and to certify properness.
class ModelPool {
 public:
  explicit ModelPool(std::vector<std::string> vars, std::uint64_t seed = 0x5a7);
  /// False when some model refutes a <= b. Variables outside the pool's
  /// vocabulary are read as empty.
  bool consistent_leq(const Term& a, const Term& b) const;
  /// First model in which `pred` holds, with missing variables bound to 0.
  template <class Pred>
  std::optional<RelModel> find(const std::vector<std::string>& vars, Pred pred) const {
    for (const auto& m : models_) {
      RelModel mm = m.with_vars(vars);
      if (pred(mm)) return mm;
    }
    return std::nullopt;
  }
  std::size_t size() const { return models_.size(); }

 private:
  std::vector<RelModel> models_;
};

/// Prover front end with caching, the semantic filter, and an event log.
class Oracle {
 public:
  Oracle(AxiomSet set, SaturationBudget budget, std::vector<std::string> vars);

  /// a <= b was proved (a trace is kept); false means not proved.
  bool leq(const Term& a, const Term& b);
  bool equal(const Term& a, const Term& b);
  /// The trace behind a successful leq/equal call.
  const ProofTrace* trace(const Equation& eq) const;

  const ModelPool& models() const { return models_; }
  AxiomSet axioms() const { return set_; }
  const SaturationBudget& budget() const { return budget_; }

  struct Stats {
    std::size_t queries = 0;
    std::size_t cache_hits = 0;
    std::size_t filtered = 0;
    std::size_t prover_calls = 0;
    std::size_t proved = 0;
  };
  const Stats& stats() const { return stats_; }

 private:
  bool query(const Equation& eq);

  AxiomSet set_;
  SaturationBudget budget_;
  ModelPool models_;
  struct EqHash {
    std::size_t operator()(const Equation& e) const {
      return e.lhs.hash() * 31 + e.rhs.hash() + static_cast<std::size_t>(e.relation);
    }
  };
  std::unordered_map<Equation, std::optional<ProofTrace>, EqHash> cache_;
  Stats stats_;
};

struct SubidentityBasis {
  Term theta;
  std::vector<Term> pool;
  /// Pool members (and their pairwise meets) with eps;theta = theta proved.
  std::vector<Term> generators;
  std::map<Term, ProofTrace> proofs;
  /// Subidentities shown to lie in E while saturating (1 & tau when
  /// 1 is in F(E;tau;E)).
  std::vector<Term> derived;

  /// Meet of generators and derived elements: the least element of E known.
  Term epsilon() const;
};

/// Throws std::invalid_argument if theta contains a join or is provably 0.
SubidentityBasis build_basis(const Term& theta, Oracle& oracle, int pool_depth);

/// The filter generated by eps;g;eps for the cores g and eps in E.
struct FilterDescriptor {
  std::vector<Term> cores;  // sorted, duplicate-free, nonempty

  static FilterDescriptor of(std::vector<Term> cores);
  static FilterDescriptor e() { return of({Term::ide()}); }
  bool is_e() const { return cores.size() == 1 && cores[0].is_ide(); }
  Term core_meet() const { return Term::meet(cores); }
  /// Adds a core; false if already present.
  bool add(const Term& core);
  friend bool operator==(const FilterDescriptor&, const FilterDescriptor&) = default;
};

enum class Membership { Member, Unknown };

/// eps;(meet of cores);eps <= sigma proved, with eps the basis' least element.
Membership membership(const Term& sigma, const FilterDescriptor& f, const SubidentityBasis& basis,
                      Oracle& oracle);

using Edge = std::pair<std::size_t, std::size_t>;

struct Task {
  std::size_t u = 0;
  std::size_t v = 0;
  Term tau;
  Term sigma;
  friend auto operator<=>(const Task&, const Task&) = default;
  friend bool operator==(const Task&, const Task&) = default;
};

struct SatEvent {
  std::size_t step = 0;
  std::string kind;  // init, split, absorb, skip, witnessed, idle
  std::string detail;
};

struct SatGraph {
  Term theta;
  SubidentityBasis basis;
  std::size_t nodes = 0;  // ids 0..nodes-1, in creation order
  std::size_t u0 = 0;
  std::size_t v0 = 0;
  std::map<Edge, FilterDescriptor> labels;  // edges with nonempty labels
  std::set<Edge> witnesses;
  std::deque<Task> queue;
  std::set<Task> processed;
  std::size_t steps = 0;
  std::vector<SatEvent> log;

  bool has_edge(std::size_t u, std::size_t v) const { return labels.count({u, v}) > 0; }
};

SatGraph init_graph(const Term& theta, SubidentityBasis basis, Oracle& oracle);
/// Processes one task: a split into a new node, an absorbed unit, or a skip.
void apply_step(SatGraph& g, const Task& task, Oracle& oracle);
/// Pops up to `steps` tasks FIFO, re-enqueueing each at the tail.
void run_steps(SatGraph& g, std::size_t steps, Oracle& oracle);
/// Builds the basis and graph for theta and runs `steps` steps.
SatGraph run(const Term& theta, std::size_t steps, Oracle& oracle, int pool_depth = 2);

enum class Status { Holds, Violated, Unknown };
std::string to_string(Status s);

struct ConditionReport {
  std::string name;  // RT, Gen, Fun, DR, Comp, Ide
  Status status = Status::Holds;
  std::string witness;  // edge, terms, or model for Violated (and certificates)
  std::size_t unknowns = 0;
};

struct InvariantReport {
  std::size_t step = 0;
  std::vector<ConditionReport> conditions;
  std::size_t open_defects = 0;  // distinct tasks never processed
  bool any_violated() const;
};

InvariantReport check_invariants(const SatGraph& g, Oracle& oracle);

/// iota(x) = edges whose label accepts x.
RelModel extract_model(const SatGraph& g, const std::vector<std::string>& vars, Oracle& oracle);

struct RefuteResult {
  std::optional<CounterexampleReport> report;
  SatGraph graph;
  std::string diagnostics;
};

/// Runs the construction for theta, extracts a model and keeps it only if
/// evaluation confirms (u0, v0) in theta, not in theta_prime, and the model
/// is integral.
RefuteResult refute(const Term& theta, const Term& theta_prime, std::size_t steps, Oracle& oracle,
                    int pool_depth = 2);

/// Witness edges bold, loops dashed, labels list the cores.
std::string to_dot(const SatGraph& g, const std::string& name = "G");

}  // namespace omrel
