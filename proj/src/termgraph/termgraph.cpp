#include "omrel/termgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "omrel/parallel.hpp"

namespace omrel {

namespace {

class Builder {
 public:
  std::pair<std::size_t, std::size_t> build(const Term& t) {
    switch (t.kind()) {
      case Kind::Zero:
        throw FragmentError("term graph of 0");
      case Kind::Join:
        throw FragmentError("term graph of a join");
      case Kind::Ide: {
        std::size_t n = fresh();
        return {n, n};
      }
      case Kind::Var: {
        std::size_t s = fresh();
        std::size_t e = fresh();
        edges_.push_back({s, e, t.name()});
        return {s, e};
      }
      case Kind::Comp: {
        auto kids = t.children();
        auto [s, e] = build(kids[0]);
        for (std::size_t i = 1; i < kids.size(); ++i) {
          auto [s2, e2] = build(kids[i]);
          unite(e, s2);
          e = e2;
        }
        return {s, e};
      }
      case Kind::Meet: {
        auto kids = t.children();
        auto [s, e] = build(kids[0]);
        for (std::size_t i = 1; i < kids.size(); ++i) {
          auto [s2, e2] = build(kids[i]);
          unite(s, s2);
          unite(e, e2);
        }
        return {s, e};
      }
    }
    throw std::logic_error("unreachable");
  }

  TermGraph finish(std::pair<std::size_t, std::size_t> ends) {
    // Representatives are least ids, so renumbering in id order keeps
    // construction order.
    std::vector<std::size_t> index(parent_.size(), 0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      if (find(i) == i) index[i] = count++;
    }
    TermGraph g;
    g.nodes = count;
    std::set<TermGraph::Edge> edges;
    for (const auto& e : edges_) edges.insert({index[find(e.from)], index[find(e.to)], e.label});
    g.edges.assign(edges.begin(), edges.end());
    g.source = index[find(ends.first)];
    g.target = index[find(ends.second)];
    return g;
  }

 private:
  std::size_t fresh() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  std::vector<std::size_t> parent_;
  std::vector<TermGraph::Edge> edges_;
};

using Domain = std::vector<char>;

struct Target {
  // by label: out[u] / in[v] as membership rows over the target's nodes
  std::map<std::string, std::vector<Domain>> out;
  std::map<std::string, std::vector<Domain>> in;
};

class HomSearch {
 public:
  HomSearch(const TermGraph& from, const TermGraph& to) : from_(from), to_(to) {
    for (const auto& e : to.edges) {
      auto& o = t_.out[e.label];
      auto& i = t_.in[e.label];
      if (o.empty()) {
        o.assign(to.nodes, Domain(to.nodes, 0));
        i.assign(to.nodes, Domain(to.nodes, 0));
      }
      o[e.from][e.to] = 1;
      i[e.to][e.from] = 1;
    }
  }

  std::optional<Homomorphism> run() {
    if (from_.nodes == 0) return Homomorphism{};
    for (const auto& e : from_.edges) {
      if (!t_.out.count(e.label)) return std::nullopt;
    }
    std::vector<Domain> dom(from_.nodes, Domain(to_.nodes, 1));
    auto pin = [&](std::size_t node, std::size_t value) {
      for (std::size_t c = 0; c < to_.nodes; ++c) dom[node][c] &= static_cast<char>(c == value);
    };
    pin(from_.source, to_.source);
    pin(from_.target, to_.target);
    std::vector<char> assigned(from_.nodes, 0);
    Homomorphism h(from_.nodes, 0);
    if (!search(dom, assigned, h)) return std::nullopt;
    return h;
  }

 private:
  static std::size_t size(const Domain& d) { return static_cast<std::size_t>(std::count(d.begin(), d.end(), 1)); }

  bool search(std::vector<Domain>& dom, std::vector<char>& assigned, Homomorphism& h) {
    std::size_t best = from_.nodes;
    std::size_t best_size = to_.nodes + 1;
    for (std::size_t n = 0; n < from_.nodes; ++n) {
      if (assigned[n]) continue;
      std::size_t s = size(dom[n]);
      if (s < best_size) {
        best = n;
        best_size = s;
      }
    }
    if (best == from_.nodes) return true;
    if (best_size == 0) return false;
    for (std::size_t c = 0; c < to_.nodes; ++c) {
      if (!dom[best][c]) continue;
      std::vector<Domain> next = dom;
      std::fill(next[best].begin(), next[best].end(), 0);
      next[best][c] = 1;
      if (!propagate(next, best, c)) continue;
      assigned[best] = 1;
      h[best] = c;
      if (search(next, assigned, h)) return true;
      assigned[best] = 0;
    }
    return false;
  }

  bool propagate(std::vector<Domain>& dom, std::size_t node, std::size_t value) {
    for (const auto& e : from_.edges) {
      if (e.from == node) {
        const Domain& allowed = t_.out.at(e.label)[value];
        for (std::size_t c = 0; c < to_.nodes; ++c) dom[e.to][c] &= allowed[c];
        if (size(dom[e.to]) == 0) return false;
      }
      if (e.to == node) {
        const Domain& allowed = t_.in.at(e.label)[value];
        for (std::size_t c = 0; c < to_.nodes; ++c) dom[e.from][c] &= allowed[c];
        if (size(dom[e.from]) == 0) return false;
      }
    }
    return true;
  }

  const TermGraph& from_;
  const TermGraph& to_;
  Target t_;
};

void require_fragment(const Term& t) {
  if (t.has_join()) throw FragmentError("term contains a join: " + render(t));
}

}  // namespace

TermGraph build_term_graph(const Term& t) {
  Builder b;
  auto ends = b.build(t);
  return b.finish(ends);
}

bool is_homomorphism(const Homomorphism& h, const TermGraph& from, const TermGraph& to) {
  if (h.size() != from.nodes) return false;
  for (std::size_t v : h) {
    if (v >= to.nodes) return false;
  }
  if (from.nodes > 0 && (h[from.source] != to.source || h[from.target] != to.target)) return false;
  for (const auto& e : from.edges) {
    if (!std::binary_search(to.edges.begin(), to.edges.end(), TermGraph::Edge{h[e.from], h[e.to], e.label})) {
      return false;
    }
  }
  return true;
}

std::optional<Homomorphism> find_homomorphism(const TermGraph& from, const TermGraph& to) {
  auto h = HomSearch(from, to).run();
  if (h && !is_homomorphism(*h, from, to)) throw std::logic_error("homomorphism search returned a non-homomorphism");
  return h;
}

bool decide_leq_meet_comp_one(const Term& a, const Term& b) {
  require_fragment(a);
  require_fragment(b);
  Term na = normalize(a);
  Term nb = normalize(b);
  if (na.is_zero()) return true;
  if (nb.is_zero()) return false;
  return find_homomorphism(build_term_graph(nb), build_term_graph(na)).has_value();
}

RelModel canonical_countermodel(const Term& a, const std::vector<std::string>& extra_vars) {
  require_fragment(a);
  Term na = normalize(a);
  if (na.is_zero()) throw FragmentError("no canonical countermodel for 0");
  TermGraph g = build_term_graph(na);
  RelModel m;
  m.base = g.nodes;
  for (const auto& v : na.variables()) m.vars[v] = BitRel(g.nodes);
  for (const auto& v : extra_vars) m.vars.try_emplace(v, BitRel(g.nodes));
  for (const auto& e : g.edges) m.vars[e.label].set(e.from, e.to);
  return m;
}

Tri decide_with_join_reduction(const Term& a, const Term& b, const LeqOracle& oracle) {
  auto as = join_free_decompose(normalize(a));
  auto bs = join_free_decompose(normalize(b));
  std::vector<Tri> per(as.size(), Tri::False);
  parallel_for(as.size(), [&](std::size_t i) {
    Tri best = Tri::False;
    for (const auto& bj : bs) {
      Tri r = oracle(as[i], bj);
      if (r == Tri::True) {
        best = Tri::True;
        break;
      }
      if (r == Tri::Unknown) best = Tri::Unknown;
    }
    per[i] = best;
  }, 1);
  Tri out = Tri::True;
  for (Tri r : per) {
    if (r == Tri::False) return Tri::False;
    if (r == Tri::Unknown) out = Tri::Unknown;
  }
  return out;
}

bool decide_leq(const Term& a, const Term& b) {
  Tri r = decide_with_join_reduction(a, b, [](const Term& x, const Term& y) {
    return decide_leq_meet_comp_one(x, y) ? Tri::True : Tri::False;
  });
  return r == Tri::True;
}

std::string to_dot(const TermGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t n = 0; n < g.nodes; ++n) {
    out << "  n" << n << " [label=\"" << n << "\"";
    if (n == g.source && n == g.target) {
      out << ", shape=diamond, peripheries=2";
    } else if (n == g.source) {
      out << ", shape=diamond";
    } else if (n == g.target) {
      out << ", shape=doublecircle";
    }
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace omrel
