#include "omrel/term.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace omrel {

namespace detail {

struct Node {
  Kind kind = Kind::Zero;
  std::string name;
  std::vector<Term> children;
  std::size_t hash = 0;
  std::size_t size = 1;
  bool has_join = false;
  bool has_zero = false;
};

}  // namespace detail

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<const detail::Node> make_node(Kind kind, std::string name,
                                              std::vector<Term> children) {
  auto node = std::make_shared<detail::Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->children = std::move(children);
  std::size_t h = static_cast<std::size_t>(kind) * 0x51ed27u + 17;
  if (kind == Kind::Var) h = mix(h, std::hash<std::string>{}(node->name));
  node->has_join = kind == Kind::Join;
  node->has_zero = kind == Kind::Zero;
  for (const auto& c : node->children) {
    h = mix(h, c.hash());
    node->size += c.size();
    node->has_join = node->has_join || c.has_join();
    node->has_zero = node->has_zero || c.has_zero();
  }
  node->hash = h;
  return node;
}

const std::shared_ptr<const detail::Node>& zero_node() {
  static const auto node = make_node(Kind::Zero, "", {});
  return node;
}

const std::shared_ptr<const detail::Node>& ide_node() {
  static const auto node = make_node(Kind::Ide, "", {});
  return node;
}

void flatten_into(Kind kind, const Term& t, std::vector<Term>& out) {
  if (t.kind() == kind) {
    for (const auto& c : t.children()) out.push_back(c);
  } else {
    out.push_back(t);
  }
}

void sort_unique(std::vector<Term>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Term::Term() : node_(zero_node()) {}

Term Term::zero() { return Term(zero_node()); }
Term Term::ide() { return Term(ide_node()); }

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
  return Term(make_node(Kind::Var, std::move(name), {}));
}

Term Term::raw(Kind kind, std::vector<Term> children) {
  switch (kind) {
    case Kind::Zero:
      return zero();
    case Kind::Ide:
      return ide();
    case Kind::Var:
      throw std::invalid_argument("Term::raw cannot build variables");
    default:
      break;
  }
  if (children.size() < 2) throw std::invalid_argument("Term::raw needs at least two children");
  return Term(make_node(kind, "", std::move(children)));
}

Term Term::meet(std::vector<Term> children) {
  std::vector<Term> flat;
  flat.reserve(children.size());
  for (const auto& c : children) {
    if (c.is_zero()) return zero();
    flatten_into(Kind::Meet, c, flat);
  }
  if (flat.empty()) throw std::invalid_argument("meet of no terms");
  sort_unique(flat);
  if (flat.size() == 1) return flat.front();
  return Term(make_node(Kind::Meet, "", std::move(flat)));
}

Term Term::join(std::vector<Term> children) {
  std::vector<Term> flat;
  flat.reserve(children.size());
  for (const auto& c : children) {
    if (c.is_zero()) continue;
    flatten_into(Kind::Join, c, flat);
  }
  if (flat.empty()) return zero();
  sort_unique(flat);
  if (flat.size() == 1) return flat.front();
  return Term(make_node(Kind::Join, "", std::move(flat)));
}

Term Term::comp(std::vector<Term> children) {
  std::vector<Term> flat;
  flat.reserve(children.size());
  for (const auto& c : children) {
    if (c.is_zero()) return zero();
    if (c.is_ide()) continue;
    flatten_into(Kind::Comp, c, flat);
  }
  if (flat.empty()) return ide();
  if (flat.size() == 1) return flat.front();
  return Term(make_node(Kind::Comp, "", std::move(flat)));
}

Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::children() const { return node_->children; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
bool Term::has_join() const { return node_->has_join; }
bool Term::has_zero() const { return node_->has_zero; }

std::vector<std::string> Term::variables() const {
  std::set<std::string> names;
  std::vector<const Term*> stack{this};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    if (t->is_var()) names.insert(t->name());
    for (const auto& c : t->children()) stack.push_back(&c);
  }
  return {names.begin(), names.end()};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() == Kind::Var) {
    int r = a.name().compare(b.name());
    return r < 0 ? std::strong_ordering::less
                 : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  auto ac = a.children();
  auto bc = b.children();
  return std::lexicographical_compare_three_way(ac.begin(), ac.end(), bc.begin(), bc.end());
}

Equation Equation::desugared() const {
  if (relation == Relation::Eq) return *this;
  return Equation{Term::meet(lhs, rhs), lhs, Relation::Eq};
}

Equation Equation::normalized() const {
  return Equation{normalize(lhs), normalize(rhs), relation};
}

Term normalize(const Term& t) {
  switch (t.kind()) {
    case Kind::Zero:
    case Kind::Ide:
    case Kind::Var:
      return t;
    default:
      break;
  }
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(normalize(c));
  switch (t.kind()) {
    case Kind::Meet:
      return Term::meet(std::move(kids));
    case Kind::Join:
      return Term::join(std::move(kids));
    default:
      return Term::comp(std::move(kids));
  }
}

namespace {

std::vector<Term> product(const std::vector<std::vector<Term>>& factors, Kind kind) {
  std::vector<std::vector<Term>> acc{{}};
  for (const auto& options : factors) {
    std::vector<std::vector<Term>> next;
    next.reserve(acc.size() * options.size());
    for (const auto& prefix : acc) {
      for (const auto& o : options) {
        auto p = prefix;
        p.push_back(o);
        next.push_back(std::move(p));
      }
    }
    acc = std::move(next);
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& combo : acc) {
    out.push_back(kind == Kind::Meet ? Term::meet(std::move(combo)) : Term::comp(std::move(combo)));
  }
  return out;
}

}  // namespace

std::vector<Term> join_free_decompose(const Term& t) {
  std::vector<Term> out;
  switch (t.kind()) {
    case Kind::Zero:
      return out;
    case Kind::Ide:
    case Kind::Var:
      out.push_back(t);
      return out;
    case Kind::Join:
      for (const auto& c : t.children()) {
        auto part = join_free_decompose(c);
        out.insert(out.end(), part.begin(), part.end());
      }
      break;
    case Kind::Meet:
    case Kind::Comp: {
      std::vector<std::vector<Term>> factors;
      for (const auto& c : t.children()) {
        factors.push_back(join_free_decompose(c));
        if (factors.back().empty()) return {};
      }
      out = product(factors, t.kind());
      std::erase_if(out, [](const Term& x) { return x.is_zero(); });
      break;
    }
  }
  sort_unique(out);
  return out;
}

bool is_subidentity_syntactic(const Term& t) {
  if (t.is_zero() || t.is_ide()) return true;
  if (t.kind() != Kind::Meet) return false;
  return std::any_of(t.children().begin(), t.children().end(),
                     [](const Term& c) { return c.is_ide(); });
}

std::vector<Term> conjuncts(const Term& t) {
  if (t.kind() == Kind::Meet) return {t.children().begin(), t.children().end()};
  return {t};
}

}  // namespace omrel
