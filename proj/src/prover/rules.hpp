#pragma once

// Compiled rewrite rules and the matcher behind the prover.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "omrel/axioms.hpp"
#include "omrel/prover.hpp"

namespace omrel::detail {

constexpr std::size_t kMaxMetavars = 8;

struct Pattern {
  Kind kind = Kind::Zero;
  int var = -1;
  std::vector<Pattern> kids;  // meets/joins: non-variable children first
};

struct Binding {
  std::array<Term, kMaxMetavars> value;
  std::uint32_t bound = 0;
  bool has(int v) const { return (bound >> v) & 1U; }
};

/// One oriented use of an axiom (or of an instance variant of it).
struct Rule {
  const Axiom* axiom = nullptr;
  Direction direction = Direction::LeftToRight;
  std::vector<std::string> vars;  // metavariable names by index
  Pattern from;
  Pattern to;
  std::vector<int> extra;  // variables of `to` not bound by `from`
  /// Base metavariable -> pattern over `vars`; identity for plain axioms.
  std::vector<std::pair<std::string, Pattern>> base_instance;
};

std::vector<Rule> compile_rules(AxiomSet set, bool instance_variants);

Term instantiate(const Pattern& p, const Binding& b);

/// Matches `p` against `s` at the root of a rewrite: meets, joins and
/// compositions may leave unmatched children as context.
void match_site(const Pattern& p, const Term& s, Binding& b,
                const std::function<void(const Binding&, const Focus&)>& k);

/// Replaces the focus of `s` by `replacement` and renormalizes.
Term replace_focus(const Term& s, const Focus& f, const Term& replacement);
/// The subterm a focus selects.
Term focus_term(const Term& s, const Focus& f);
Term with_child(const Term& t, std::size_t i, const Term& child);

}  // namespace omrel::detail
