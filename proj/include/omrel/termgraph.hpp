#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omrel/model.hpp"
#include "omrel/term.hpp"

namespace omrel {

/// Raised for terms outside the join-free (&, ;, 1) fragment.
class FragmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TermGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::string label;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };
  std::size_t nodes = 0;
  std::vector<Edge> edges;  // sorted, duplicate-free
  std::size_t source = 0;
  std::size_t target = 0;
};

/// Composition glues target to source, meet glues sources and targets.
/// Nodes are numbered by their first appearance during construction.
TermGraph build_term_graph(const Term& t);

/// h[node of `from`] = node of `to`.
using Homomorphism = std::vector<std::size_t>;

bool is_homomorphism(const Homomorphism& h, const TermGraph& from, const TermGraph& to);
/// Backtracking, most constrained node first, with forward checking.
std::optional<Homomorphism> find_homomorphism(const TermGraph& from, const TermGraph& to);

/// a <= b in all relation algebras, for join-free a and b: true iff G(b)
/// maps homomorphically into G(a). Throws FragmentError on joins.
bool decide_leq_meet_comp_one(const Term& a, const Term& b);

/// G(a) read as a model: base = nodes, x = its x-edges. Variables listed in
/// `extra_vars` but absent from `a` are bound to the empty relation.
RelModel canonical_countermodel(const Term& a, const std::vector<std::string>& extra_vars = {});

using LeqOracle = std::function<Tri(const Term&, const Term&)>;

/// Splits both sides into joins of join-free terms and answers
/// "for every i there is j with a_i <= b_j".
Tri decide_with_join_reduction(const Term& a, const Term& b, const LeqOracle& oracle);
/// Join reduction over the term-graph oracle.
bool decide_leq(const Term& a, const Term& b);

std::string to_dot(const TermGraph& g, const std::string& name = "G");

}  // namespace omrel
