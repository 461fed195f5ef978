#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "omrel/term.hpp"

namespace omrel {

enum class AxiomSet {
  Base,
  Integral,
  BaseJoin,
  IntegralJoin,
  IntegralLang,
  Commutative,
  CommutativeJoin,
};

std::string to_string(AxiomSet s);
/// Accepts the CLI spellings: base, integral, base-join, integral-join,
/// integral-lang, commutative, commutative-join.
AxiomSet axiom_set_from_string(std::string_view s);
std::vector<AxiomSet> all_axiom_sets();

/// An axiom schema; the variables of `eq` are metavariables.
struct Axiom {
  std::string id;
  std::string text;  // as written, before desugaring
  Equation eq;       // desugared and normalized
  /// Holds by construction of the normal form (lattice/monoid laws).
  bool structural = false;
};

/// Axiom schemata of `s`, in a fixed order.
const std::vector<Axiom>& axiom_list(AxiomSet s);
/// Looks an axiom up by id across all sets; throws std::out_of_range.
const Axiom& axiom_by_id(std::string_view id);

/// Which kind of models validate the set.
bool is_integral_set(AxiomSet s);
bool has_join(AxiomSet s);

}  // namespace omrel
