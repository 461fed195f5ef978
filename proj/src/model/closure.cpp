#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "omrel/model.hpp"

namespace omrel {

namespace {

// Breadth-first closure. `on_new` sees every element once and may stop the
// walk by returning false. Returns true iff a fixpoint was reached.
bool walk_closure(const RelModel& m, std::size_t cap, ClosureOps ops,
                  std::vector<BitRel>& elements,
                  const std::function<bool(const BitRel&)>& on_new) {
  std::unordered_set<BitRel, BitRelHash> seen;
  bool stopped = false;
  bool truncated = false;
  auto add = [&](BitRel r) {
    if (stopped || truncated) return;
    if (seen.contains(r)) return;
    if (elements.size() >= cap) {
      truncated = true;
      return;
    }
    seen.insert(r);
    elements.push_back(std::move(r));
    if (!on_new(elements.back())) stopped = true;
  };
  add(BitRel(m.base));
  add(BitRel::identity(m.base));
  for (const auto& [name, rel] : m.vars) add(rel);
  for (std::size_t i = 0; i < elements.size() && !stopped && !truncated; ++i) {
    for (std::size_t j = 0; j <= i && !stopped && !truncated; ++j) {
      // copies: `elements` may reallocate inside add()
      const BitRel a = elements[i];
      const BitRel b = elements[j];
      add(a & b);
      add(a.compose(b));
      add(b.compose(a));
      if (ops == ClosureOps::MeetCompJoin) add(a | b);
    }
  }
  return !stopped && !truncated;
}

}  // namespace

Closure generated_closure(const RelModel& m, std::size_t cap, ClosureOps ops) {
  Closure out;
  out.complete = walk_closure(m, std::max<std::size_t>(cap, 1), ops, out.elements,
                              [](const BitRel&) { return true; });
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

Tri is_integral_model(const RelModel& m, std::size_t cap) {
  const BitRel id = BitRel::identity(m.base);
  bool proper_found = false;
  std::vector<BitRel> elements;
  bool complete = walk_closure(m, std::max<std::size_t>(cap, 1), ClosureOps::MeetComp, elements,
                               [&](const BitRel& r) {
                                 BitRel sub = r & id;
                                 if (!sub.empty() && sub != id) {
                                   proper_found = true;
                                   return false;
                                 }
                                 return true;
                               });
  if (proper_found) return Tri::False;
  return complete ? Tri::True : Tri::Unknown;
}

Tri is_commutative_model(const RelModel& m, std::size_t cap) {
  // Generators first: cheap rejection before the closure.
  std::vector<const BitRel*> gens;
  for (const auto& [name, rel] : m.vars) gens.push_back(&rel);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i]->compose(*gens[j]) != gens[j]->compose(*gens[i])) return Tri::False;
    }
  }
  Closure c = generated_closure(m, cap);
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    for (std::size_t j = i + 1; j < c.elements.size(); ++j) {
      if (c.elements[i].compose(c.elements[j]) != c.elements[j].compose(c.elements[i])) {
        return Tri::False;
      }
    }
  }
  return c.complete ? Tri::True : Tri::Unknown;
}

BitRel group_relation(std::size_t n, const std::vector<std::size_t>& subset, bool klein) {
  BitRel r(n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t s : subset) {
      std::size_t h = klein ? (g ^ s) : (g + s) % n;
      r.set(g, h);
    }
  }
  return r;
}

RelModel z3_rotation_model() {
  RelModel m;
  m.base = 3;
  m.vars["x"] = group_relation(3, {1});
  m.vars["y"] = group_relation(3, {2});
  return m;
}

}  // namespace omrel
