#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omrel {

/// Node kinds of the (+, &, ;, 0, 1) signature. The declaration order is the
/// first key of the total term order.
enum class Kind : std::uint8_t { Zero, Ide, Var, Comp, Meet, Join };

class Term;

namespace detail {
struct Node;
}

/// Immutable term value.
///
/// Terms built through the smart constructors (`meet`, `join`, `comp`) are
/// always in normal form: meets and joins are flattened, sorted, and free of
/// duplicates; compositions are flattened and free of `1`; `0` absorbs meets
/// and compositions and disappears from joins. `Term::raw` builds a node
/// verbatim and is only used to represent unnormalized input.
class Term {
 public:
  Term();  // 0

  static Term zero();
  static Term ide();
  static Term var(std::string name);
  static Term meet(std::vector<Term> children);
  static Term join(std::vector<Term> children);
  static Term comp(std::vector<Term> children);
  static Term meet(const Term& a, const Term& b) { return meet(std::vector<Term>{a, b}); }
  static Term join(const Term& a, const Term& b) { return join(std::vector<Term>{a, b}); }
  static Term comp(const Term& a, const Term& b) { return comp(std::vector<Term>{a, b}); }
  /// Binary or n-ary node without any normalization.
  static Term raw(Kind kind, std::vector<Term> children);

  Kind kind() const;
  /// Variable name; empty for non-variables.
  const std::string& name() const;
  std::span<const Term> children() const;
  std::size_t hash() const;
  /// Number of nodes.
  std::size_t size() const;

  bool is_zero() const { return kind() == Kind::Zero; }
  bool is_ide() const { return kind() == Kind::Ide; }
  bool is_var() const { return kind() == Kind::Var; }
  bool has_join() const;
  bool has_zero() const;
  /// Sorted, duplicate-free variable names.
  std::vector<std::string> variables() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

enum class Relation : std::uint8_t { Eq, Leq };

/// `lhs = rhs` or `lhs <= rhs`; the latter means `lhs & rhs = lhs`.
struct Equation {
  Term lhs;
  Term rhs;
  Relation relation = Relation::Eq;

  /// Leq(a, b) becomes Eq(a & b, a); Eq is returned unchanged.
  Equation desugared() const;
  Equation normalized() const;
  friend bool operator==(const Equation&, const Equation&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses a term and normalizes it.
Term parse(std::string_view text);
/// Parses a term keeping the binary tree exactly as written.
Term parse_raw(std::string_view text);
/// Parses `term = term` or `term <= term`; both sides normalized.
Equation parse_equation(std::string_view text);

/// ASCII rendering with minimal parentheses; `parse(render(t)) == t` for
/// normal-form terms.
std::string render(const Term& t);
std::string render(const Equation& e);

/// Rebuilds `t` bottom-up through the smart constructors.
Term normalize(const Term& t);

/// Join-free, zero-free terms whose join equals `t` by distributivity and
/// additivity. Sorted and duplicate-free; empty iff `t` is 0.
std::vector<Term> join_free_decompose(const Term& t);

/// Sound syntactic subidentity test: 0, 1, or a meet with a `1` conjunct.
bool is_subidentity_syntactic(const Term& t);

/// Conjuncts of a meet, or the term itself.
std::vector<Term> conjuncts(const Term& t);

}  // namespace omrel
