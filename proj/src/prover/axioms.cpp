#include "omrel/axioms.hpp"

#include <map>
#include <stdexcept>

namespace omrel {

namespace {

struct AxiomText {
  const char* id;
  const char* text;
  bool structural;
};

// Metavariables: x, y, z and primed copies x1, y1.
constexpr AxiomText kMeetSemilattice[] = {
    {"meet-assoc", "(x & y) & z = x & (y & z)", true},
    {"meet-comm", "x & y = y & x", true},
    {"meet-idem", "x & x = x", true},
};

constexpr AxiomText kMonoid[] = {
    {"comp-assoc", "(x;y);z = x;(y;z)", true},
    {"comp-unit-l", "1;x = x", true},
    {"comp-unit-r", "x;1 = x", true},
};

constexpr AxiomText kCore[] = {
    {"mon", "(x & x1);(y & y1) <= x;y", false},
    {"zero-meet", "0 = 0 & x", true},
    {"zero-comp-l", "0 = 0;x", true},
    {"zero-comp-r", "0 = x;0", true},
    {"sub-meet", "(1 & x);(1 & y) = 1 & x & y", false},
    {"sub-left", "(1 & x);(y & z) = (1 & x);y & z", false},
    {"sub-right", "(x & y);(1 & z) = x & y;(1 & z)", false},
};

constexpr AxiomText kIntegral[] = {
    {"int-swap", "1 & x;y = 1 & y;x", false},
    {"int-comm", "(1 & x);y = y;(1 & x)", false},
};

constexpr AxiomText kLattice[] = {
    {"join-assoc", "(x + y) + z = x + (y + z)", true},
    {"join-comm", "x + y = y + x", true},
    {"join-idem", "x + x = x", true},
    {"absorb-meet", "x & (x + y) = x", false},
    {"absorb-join", "x + x & y = x", false},
    {"dist-meet", "x & (y + z) = x & y + x & z", false},
    {"dist-join", "x + y & z = (x + y) & (x + z)", false},
    {"add-left", "(x + y);z = x;z + y;z", false},
    {"add-right", "x;(y + z) = x;y + x;z", false},
};

constexpr AxiomText kLang[] = {
    {"lang-split", "x;y & 1 = (x & 1);(y & 1)", false},
};

constexpr AxiomText kComm[] = {
    {"comm", "x;y = y;x", false},
};

template <std::size_t N>
void append(std::vector<Axiom>& out, const AxiomText (&texts)[N]) {
  for (const auto& s : texts) {
    Axiom a;
    a.id = s.id;
    a.text = s.text;
    a.eq = parse_equation(s.text).desugared().normalized();
    a.structural = s.structural;
    out.push_back(std::move(a));
  }
}

std::vector<Axiom> build(AxiomSet s) {
  std::vector<Axiom> out;
  append(out, kMeetSemilattice);
  append(out, kMonoid);
  append(out, kCore);
  bool integral = is_integral_set(s);
  if (integral) append(out, kIntegral);
  if (has_join(s)) append(out, kLattice);
  if (s == AxiomSet::IntegralLang) append(out, kLang);
  if (s == AxiomSet::Commutative || s == AxiomSet::CommutativeJoin) append(out, kComm);
  return out;
}

}  // namespace

std::string to_string(AxiomSet s) {
  switch (s) {
    case AxiomSet::Base: return "base";
    case AxiomSet::Integral: return "integral";
    case AxiomSet::BaseJoin: return "base-join";
    case AxiomSet::IntegralJoin: return "integral-join";
    case AxiomSet::IntegralLang: return "integral-lang";
    case AxiomSet::Commutative: return "commutative";
    case AxiomSet::CommutativeJoin: return "commutative-join";
  }
  return "?";
}

AxiomSet axiom_set_from_string(std::string_view s) {
  for (AxiomSet a : all_axiom_sets()) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown axiom set: " + std::string(s));
}

std::vector<AxiomSet> all_axiom_sets() {
  return {AxiomSet::Base,         AxiomSet::Integral,    AxiomSet::BaseJoin,
          AxiomSet::IntegralJoin, AxiomSet::IntegralLang, AxiomSet::Commutative,
          AxiomSet::CommutativeJoin};
}

bool is_integral_set(AxiomSet s) {
  return s == AxiomSet::Integral || s == AxiomSet::IntegralJoin || s == AxiomSet::IntegralLang;
}

bool has_join(AxiomSet s) {
  return s == AxiomSet::BaseJoin || s == AxiomSet::IntegralJoin || s == AxiomSet::IntegralLang ||
         s == AxiomSet::CommutativeJoin;
}

const std::vector<Axiom>& axiom_list(AxiomSet s) {
  static const std::map<AxiomSet, std::vector<Axiom>> table = [] {
    std::map<AxiomSet, std::vector<Axiom>> t;
    for (AxiomSet a : all_axiom_sets()) t[a] = build(a);
    return t;
  }();
  return table.at(s);
}

const Axiom& axiom_by_id(std::string_view id) {
  for (const auto& a : axiom_list(AxiomSet::IntegralLang)) {
    if (a.id == id) return a;
  }
  for (const auto& a : axiom_list(AxiomSet::CommutativeJoin)) {
    if (a.id == id) return a;
  }
  throw std::out_of_range("unknown axiom: " + std::string(id));
}

}  // namespace omrel
