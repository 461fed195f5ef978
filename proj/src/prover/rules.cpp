#include "rules.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace omrel::detail {

namespace {

Term make(Kind k, std::vector<Term> kids) {
  switch (k) {
    case Kind::Meet: return Term::meet(std::move(kids));
    case Kind::Join: return Term::join(std::move(kids));
    case Kind::Comp: return Term::comp(std::move(kids));
    default: break;
  }
  throw std::logic_error("make: not an operation");
}

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  if (t.children().empty()) return t;
  std::vector<Term> kids;
  for (const auto& c : t.children()) kids.push_back(substitute(c, s));
  return make(t.kind(), std::move(kids));
}

Pattern compile(const Term& t, const std::vector<std::string>& vars) {
  Pattern p;
  p.kind = t.kind();
  if (t.is_var()) {
    auto it = std::find(vars.begin(), vars.end(), t.name());
    p.var = static_cast<int>(it - vars.begin());
    return p;
  }
  for (const auto& c : t.children()) p.kids.push_back(compile(c, vars));
  if (p.kind == Kind::Meet || p.kind == Kind::Join) {
    std::stable_partition(p.kids.begin(), p.kids.end(), [](const Pattern& c) { return c.var < 0; });
  }
  return p;
}

void collect_vars(const Pattern& p, std::set<int>& out) {
  if (p.var >= 0) out.insert(p.var);
  for (const auto& c : p.kids) collect_vars(c, out);
}

void add_rules(std::vector<Rule>& out, const Axiom& ax, const Equation& eq,
               const std::map<std::string, Term>& instance) {
  std::set<std::string> names;
  for (const auto& v : eq.lhs.variables()) names.insert(v);
  for (const auto& v : eq.rhs.variables()) names.insert(v);
  std::vector<std::string> vars(names.begin(), names.end());
  if (vars.size() > kMaxMetavars) throw std::logic_error("too many metavariables");

  std::vector<std::pair<std::string, Pattern>> base;
  for (const auto& [u, term] : instance) {
    // A metavariable that normalization erased from both sides is free.
    bool kept = !term.is_var() || names.count(term.name());
    base.emplace_back(u, compile(kept ? term : Term::ide(), vars));
  }

  for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
    Rule r;
    r.axiom = &ax;
    r.direction = d;
    r.vars = vars;
    const Term& from = d == Direction::LeftToRight ? eq.lhs : eq.rhs;
    const Term& to = d == Direction::LeftToRight ? eq.rhs : eq.lhs;
    r.from = compile(from, vars);
    r.to = compile(to, vars);
    std::set<int> fv, tv;
    collect_vars(r.from, fv);
    collect_vars(r.to, tv);
    for (int v : tv) {
      if (!fv.count(v)) r.extra.push_back(v);
    }
    r.base_instance = base;
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<Rule> compile_rules(AxiomSet set, bool instance_variants) {
  std::vector<Rule> rules;
  for (const Axiom& ax : axiom_list(set)) {
    if (ax.structural) continue;
    std::set<std::string> names;
    for (const auto& v : ax.eq.lhs.variables()) names.insert(v);
    for (const auto& v : ax.eq.rhs.variables()) names.insert(v);
    std::map<std::string, Term> identity;
    for (const auto& v : names) identity[v] = Term::var(v);
    add_rules(rules, ax, ax.eq, identity);
    if (!instance_variants) continue;

    std::vector<std::map<std::string, Term>> subs;
    for (const auto& v : names) {
      auto s = identity;
      s[v] = Term::ide();
      subs.push_back(std::move(s));
    }
    for (auto a = names.begin(); a != names.end(); ++a) {
      for (auto b = std::next(a); b != names.end(); ++b) {
        auto s = identity;
        s[*b] = Term::var(*a);
        subs.push_back(std::move(s));
      }
    }
    std::set<std::pair<Term, Term>> seen{{ax.eq.lhs, ax.eq.rhs}};
    for (const auto& s : subs) {
      Equation e{substitute(ax.eq.lhs, s), substitute(ax.eq.rhs, s), Relation::Eq};
      if (e.lhs == e.rhs || !seen.insert({e.lhs, e.rhs}).second) continue;
      add_rules(rules, ax, e, s);
    }
  }
  return rules;
}

Term instantiate(const Pattern& p, const Binding& b) {
  if (p.var >= 0) {
    if (!b.has(p.var)) throw std::logic_error("unbound metavariable in instantiation");
    return b.value[p.var];
  }
  switch (p.kind) {
    case Kind::Zero: return Term::zero();
    case Kind::Ide: return Term::ide();
    default: break;
  }
  std::vector<Term> kids;
  kids.reserve(p.kids.size());
  for (const auto& c : p.kids) kids.push_back(instantiate(c, b));
  return make(p.kind, std::move(kids));
}

namespace {

using Kids = std::span<const Term>;

// Subset enumeration is exponential in the number of children.
constexpr std::size_t kMaxAcChildren = 16;

Term from_mask(Kind k, Kids kids, std::uint64_t mask) {
  std::vector<Term> sel;
  for (std::size_t j = 0; j < kids.size(); ++j) {
    if ((mask >> j) & 1U) sel.push_back(kids[j]);
  }
  return sel.size() == 1 ? sel[0] : make(k, std::move(sel));
}

Term from_range(Kids kids, std::size_t a, std::size_t e) {
  if (e - a == 1) return kids[a];
  return Term::comp(std::vector<Term>(kids.begin() + a, kids.begin() + e));
}

void match(const Pattern& p, const Term& s, Binding& b, const std::function<void()>& k);

// Meets and joins: each pattern child takes disjoint subject children; a
// variable may take several (it then stands for their meet or join).
void match_ac(const std::vector<Pattern>& pk, std::size_t i, Kind kind, Kids sk, std::uint64_t used,
              bool exact, Binding& b, const std::function<void(std::uint64_t)>& k) {
  if (sk.size() > kMaxAcChildren) return;
  const std::uint64_t all = (std::uint64_t{1} << sk.size()) - 1;
  if (i == pk.size()) {
    if (!exact || used == all) k(used);
    return;
  }
  const Pattern& p = pk[i];
  if (p.var < 0) {
    for (std::size_t j = 0; j < sk.size(); ++j) {
      if ((used >> j) & 1U) continue;
      match(p, sk[j], b, [&] { match_ac(pk, i + 1, kind, sk, used | (std::uint64_t{1} << j), exact, b, k); });
    }
    return;
  }
  if (b.has(p.var)) {
    const Term& t = b.value[p.var];
    std::uint64_t need = 0;
    auto find = [&](const Term& c) {
      for (std::size_t j = 0; j < sk.size(); ++j) {
        if (!((used >> j) & 1U) && sk[j] == c) {
          need |= std::uint64_t{1} << j;
          return true;
        }
      }
      return false;
    };
    if (t.kind() == kind) {
      for (const auto& c : t.children()) {
        if (!find(c)) return;
      }
    } else if (!find(t)) {
      return;
    }
    match_ac(pk, i + 1, kind, sk, used | need, exact, b, k);
    return;
  }
  const std::uint64_t avail = all & ~used;
  const bool last = i + 1 == pk.size();
  for (std::uint64_t sub = avail; sub != 0; sub = (sub - 1) & avail) {
    if (exact && last && sub != avail) continue;
    b.value[p.var] = from_mask(kind, sk, sub);
    b.bound |= 1U << p.var;
    match_ac(pk, i + 1, kind, sk, used | sub, exact, b, k);
    b.bound &= ~(1U << p.var);
  }
}

// Compositions: pattern children cover consecutive subject children; a
// variable may take a segment.
void match_seq(const std::vector<Pattern>& pk, std::size_t i, Kids sk, std::size_t j, Binding& b,
               const std::function<void(std::size_t)>& k) {
  if (i == pk.size()) {
    k(j);
    return;
  }
  const Pattern& p = pk[i];
  const std::size_t rest = pk.size() - i - 1;
  if (j + rest >= sk.size()) return;
  if (p.var < 0) {
    match(p, sk[j], b, [&] { match_seq(pk, i + 1, sk, j + 1, b, k); });
    return;
  }
  if (b.has(p.var)) {
    const Term& t = b.value[p.var];
    if (t.kind() == Kind::Comp) {
      auto tk = t.children();
      if (j + tk.size() > sk.size()) return;
      for (std::size_t m = 0; m < tk.size(); ++m) {
        if (!(sk[j + m] == tk[m])) return;
      }
      match_seq(pk, i + 1, sk, j + tk.size(), b, k);
    } else if (sk[j] == t) {
      match_seq(pk, i + 1, sk, j + 1, b, k);
    }
    return;
  }
  for (std::size_t len = 1; j + len + rest <= sk.size(); ++len) {
    b.value[p.var] = from_range(sk, j, j + len);
    b.bound |= 1U << p.var;
    match_seq(pk, i + 1, sk, j + len, b, k);
    b.bound &= ~(1U << p.var);
  }
}

void match(const Pattern& p, const Term& s, Binding& b, const std::function<void()>& k) {
  if (p.var >= 0) {
    if (b.has(p.var)) {
      if (b.value[p.var] == s) k();
      return;
    }
    b.value[p.var] = s;
    b.bound |= 1U << p.var;
    k();
    b.bound &= ~(1U << p.var);
    return;
  }
  if (p.kind != s.kind()) return;
  switch (p.kind) {
    case Kind::Meet:
    case Kind::Join:
      if (s.children().size() < p.kids.size()) return;
      match_ac(p.kids, 0, p.kind, s.children(), 0, true, b, [&](std::uint64_t) { k(); });
      return;
    case Kind::Comp: {
      auto sk = s.children();
      match_seq(p.kids, 0, sk, 0, b, [&](std::size_t end) {
        if (end == sk.size()) k();
      });
      return;
    }
    default:
      k();
  }
}

}  // namespace

void match_site(const Pattern& p, const Term& s, Binding& b,
                const std::function<void(const Binding&, const Focus&)>& k) {
  if (p.var < 0 && p.kind == s.kind() && (p.kind == Kind::Meet || p.kind == Kind::Join)) {
    auto sk = s.children();
    if (sk.size() > kMaxAcChildren) return;
    const std::uint64_t all = (std::uint64_t{1} << sk.size()) - 1;
    match_ac(p.kids, 0, p.kind, sk, 0, false, b, [&](std::uint64_t used) {
      Focus f;
      if (used != all) {
        f.kind = Focus::Kind::Subset;
        for (std::size_t j = 0; j < sk.size(); ++j) {
          if ((used >> j) & 1U) f.indices.push_back(j);
        }
      }
      k(b, f);
    });
    return;
  }
  if (p.var < 0 && p.kind == Kind::Comp && s.kind() == Kind::Comp) {
    auto sk = s.children();
    for (std::size_t start = 0; start + p.kids.size() <= sk.size(); ++start) {
      match_seq(p.kids, 0, sk, start, b, [&](std::size_t end) {
        Focus f;
        if (start != 0 || end != sk.size()) {
          f.kind = Focus::Kind::Window;
          f.indices = {start, end};
        }
        k(b, f);
      });
    }
    return;
  }
  match(p, s, b, [&] { k(b, Focus{}); });
}

Term focus_term(const Term& s, const Focus& f) {
  auto sk = s.children();
  switch (f.kind) {
    case Focus::Kind::Whole:
      return s;
    case Focus::Kind::Subset: {
      if (s.kind() != Kind::Meet && s.kind() != Kind::Join) throw std::invalid_argument("subset focus on a non-lattice node");
      std::vector<Term> sel;
      for (std::size_t j : f.indices) {
        if (j >= sk.size()) throw std::invalid_argument("focus index out of range");
        sel.push_back(sk[j]);
      }
      if (sel.size() < 2) throw std::invalid_argument("subset focus needs two children");
      return make(s.kind(), std::move(sel));
    }
    case Focus::Kind::Window: {
      if (s.kind() != Kind::Comp || f.indices.size() != 2 || f.indices[0] + 2 > f.indices[1] ||
          f.indices[1] > sk.size()) {
        throw std::invalid_argument("bad window focus");
      }
      return from_range(sk, f.indices[0], f.indices[1]);
    }
  }
  return s;
}

Term replace_focus(const Term& s, const Focus& f, const Term& replacement) {
  auto sk = s.children();
  switch (f.kind) {
    case Focus::Kind::Whole:
      return replacement;
    case Focus::Kind::Subset: {
      std::vector<Term> kids{replacement};
      std::size_t next = 0;
      for (std::size_t j = 0; j < sk.size(); ++j) {
        if (next < f.indices.size() && f.indices[next] == j) {
          ++next;
        } else {
          kids.push_back(sk[j]);
        }
      }
      return make(s.kind(), std::move(kids));
    }
    case Focus::Kind::Window: {
      std::vector<Term> kids(sk.begin(), sk.begin() + f.indices[0]);
      kids.push_back(replacement);
      kids.insert(kids.end(), sk.begin() + f.indices[1], sk.end());
      return Term::comp(std::move(kids));
    }
  }
  return replacement;
}

Term with_child(const Term& t, std::size_t i, const Term& child) {
  auto tk = t.children();
  std::vector<Term> kids(tk.begin(), tk.end());
  kids.at(i) = child;
  return make(t.kind(), std::move(kids));
}

}  // namespace omrel::detail
