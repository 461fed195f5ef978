#include <algorithm>

#include "omrel/model.hpp"

namespace omrel {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::False:
      return "false";
    case Tri::True:
      return "true";
    default:
      return "unknown";
  }
}

RelModel RelModel::with_vars(const std::vector<std::string>& names) const {
  RelModel out = *this;
  for (const auto& n : names) out.vars.try_emplace(n, BitRel(base));
  return out;
}

BitRel eval_rel(const Term& t, const RelModel& m) {
  switch (t.kind()) {
    case Kind::Zero:
      return BitRel(m.base);
    case Kind::Ide:
      return BitRel::identity(m.base);
    case Kind::Var: {
      auto it = m.vars.find(t.name());
      if (it == m.vars.end()) throw UnboundVariable(t.name());
      return it->second;
    }
    default:
      break;
  }
  auto kids = t.children();
  BitRel acc = eval_rel(kids[0], m);
  for (std::size_t i = 1; i < kids.size(); ++i) {
    BitRel next = eval_rel(kids[i], m);
    switch (t.kind()) {
      case Kind::Meet:
        acc = acc & next;
        break;
      case Kind::Join:
        acc = acc | next;
        break;
      default:
        acc = acc.compose(next);
        break;
    }
  }
  return acc;
}

LangModel LangModel::with_vars(const std::vector<std::string>& names) const {
  LangModel out = *this;
  for (const auto& n : names) out.vars.try_emplace(n);
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

Language concat(const Language& a, const Language& b) {
  Language out;
  for (const auto& s : a) {
    for (const auto& t : b) out.insert(s + t);
  }
  return out;
}

}  // namespace

Language eval_lang(const Term& t, const LangModel& m) {
  switch (t.kind()) {
    case Kind::Zero:
      return {};
    case Kind::Ide:
      return {Word{}};
    case Kind::Var: {
      auto it = m.vars.find(t.name());
      if (it == m.vars.end()) throw UnboundVariable(t.name());
      return it->second;
    }
    default:
      break;
  }
  auto kids = t.children();
  Language acc = eval_lang(kids[0], m);
  for (std::size_t i = 1; i < kids.size(); ++i) {
    Language next = eval_lang(kids[i], m);
    switch (t.kind()) {
      case Kind::Meet: {
        Language both;
        std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(),
                              std::inserter(both, both.end()));
        acc = std::move(both);
        break;
      }
      case Kind::Join:
        acc.insert(next.begin(), next.end());
        break;
      default:
        acc = concat(acc, next);
        break;
    }
  }
  return acc;
}

}  // namespace omrel
