#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "omrel/bitrel.hpp"
#include "omrel/term.hpp"

namespace omrel {

enum class Tri : std::uint8_t { False, True, Unknown };
const char* to_string(Tri t);

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(const std::string& name)
      : std::runtime_error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct RelModel {
  std::size_t base = 1;
  std::map<std::string, BitRel> vars;

  /// Binds every listed variable that is not yet bound to the empty relation.
  RelModel with_vars(const std::vector<std::string>& names) const;
  friend bool operator==(const RelModel&, const RelModel&) = default;
};

BitRel eval_rel(const Term& t, const RelModel& m);

using Word = std::string;
using Language = std::set<Word>;

/// Symbols are single characters; words are strings over them.
struct LangModel {
  std::vector<char> alphabet;
  std::map<std::string, Language> vars;

  LangModel with_vars(const std::vector<std::string>& names) const;
  friend bool operator==(const LangModel&, const LangModel&) = default;
};

Language eval_lang(const Term& t, const LangModel& m);

/// Shortlex order on words: shorter first, then lexicographic.
bool shortlex_less(const Word& a, const Word& b);

// --- generated subalgebras -------------------------------------------------

enum class ClosureOps : std::uint8_t {
  MeetComp,      // (&, ;, 0, 1)
  MeetCompJoin,  // (+, &, ;, 0, 1)
};

struct Closure {
  std::vector<BitRel> elements;  // sorted
  bool complete = false;         // false when truncated at the cap
};

inline constexpr std::size_t kDefaultClosureCap = 4096;

/// Subalgebra generated by the valuation, with 0 and 1 always included.
Closure generated_closure(const RelModel& m, std::size_t cap = kDefaultClosureCap,
                          ClosureOps ops = ClosureOps::MeetComp);

/// True iff the generated subalgebra has no element strictly between the
/// empty relation and the identity. Unknown when the closure hits the cap
/// before a proper subidentity is seen.
Tri is_integral_model(const RelModel& m, std::size_t cap = kDefaultClosureCap);

/// Every pair of generated elements commutes under composition.
Tri is_commutative_model(const RelModel& m, std::size_t cap = kDefaultClosureCap);

// --- counterexample search --------------------------------------------------

enum class SearchMode : std::uint8_t { General, Integral, Commutative };
const char* to_string(SearchMode m);

struct CounterexampleReport {
  Equation equation;
  std::variant<RelModel, LangModel> model;
  /// (u, v) for relation models, a word for language models.
  std::variant<std::pair<std::size_t, std::size_t>, Word> witness;
  /// True when the witness lies in the left side (and not the right).
  bool witness_in_lhs = true;
  std::optional<SearchMode> mode;  // empty for language reports
  /// Found while enumerating a space exhaustively (as opposed to sampling).
  bool exhaustive = false;

  /// Re-evaluates both sides in the stored model and checks the witness.
  bool verify() const;
};

struct SearchStats {
  std::size_t candidates = 0;   // models generated
  std::size_t accepted = 0;     // models of the requested class that were checked
  std::size_t rejected = 0;     // non-integral / non-commutative / undecided
  std::size_t exhaustive_bases = 0;  // largest base searched exhaustively (0: none)
  bool exhaustive_only = false;      // true when no sampling was needed
};

struct RelSearchOptions {
  SearchMode mode = SearchMode::General;
  std::size_t max_base = 3;
  /// Largest base for the exhaustive phase.
  std::size_t exhaustive_max_base = 2;
  /// A base is searched exhaustively only if it has at most this many valuations.
  std::size_t exhaustive_limit = std::size_t{1} << 16;
  /// Accepted random models to check after the exhaustive phase.
  std::size_t random_models = 1000;
  /// Cap on drawn candidates, as a multiple of random_models.
  std::size_t max_draw_factor = 20;
  std::uint64_t seed = 0x5eed;
  std::size_t closure_cap = kDefaultClosureCap;
};

struct RelSearchResult {
  std::optional<CounterexampleReport> report;
  SearchStats stats;
};

RelSearchResult search_rel_counterexample(const Equation& eq, const RelSearchOptions& opts);

/// Checks the equation in one model; returns a verified report on failure.
std::optional<CounterexampleReport> check_in_model(const Equation& eq, const RelModel& m);
std::optional<CounterexampleReport> check_in_model(const Equation& eq, const LangModel& m);

struct LangSearchOptions {
  std::size_t alphabet_size = 2;
  std::size_t max_words = 3;
  std::size_t max_len = 2;
  std::size_t exhaustive_limit = std::size_t{1} << 18;
  std::size_t random_models = 1000;
  std::uint64_t seed = 0x5eed;
};

struct LangSearchResult {
  std::optional<CounterexampleReport> report;
  SearchStats stats;
  bool exhaustive = false;
};

LangSearchResult search_lang_counterexample(const Equation& eq, const LangSearchOptions& opts);

// --- structured model families ------------------------------------------------

/// Relations {(g, g*s) : s in subset} over an abelian group of order n
/// (cyclic, or Z2 x Z2 when `klein` and n == 4). Such valuations generate
/// integral, commutative subalgebras.
BitRel group_relation(std::size_t n, const std::vector<std::size_t>& subset, bool klein = false);

/// Z3 with x = rotation by +1 and y = rotation by -1.
RelModel z3_rotation_model();

}  // namespace omrel
