// Grammar, loosest to tightest:
//   term := meet ("+" meet)*
//   meet := comp ("&" comp)*
//   comp := atom (";" atom)*
//   atom := "0" | "1" | ident | "(" term ")"
#include <cctype>

#include "omrel/term.hpp"

namespace omrel {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term term() {
    Term left = meet();
    while (accept('+')) left = Term::raw(Kind::Join, {left, meet()});
    return left;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(what + ", found end of input", pos_);
    throw ParseError(what + ", found '" + std::string(1, text_[pos_]) + "'", pos_);
  }

  std::size_t position() const { return pos_; }

 private:
  Term meet() {
    Term left = comp();
    while (accept('&')) left = Term::raw(Kind::Meet, {left, comp()});
    return left;
  }

  Term comp() {
    Term left = atom();
    while (accept(';')) left = Term::raw(Kind::Comp, {left, atom()});
    return left;
  }

  Term atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term inner = term();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        fail("unexpected character after constant");
      }
      return c == '0' ? Term::zero() : Term::ide();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_') {
          ++pos_;
        } else {
          break;
        }
      }
      return Term::var(std::string(text_.substr(start, pos_ - start)));
    }
    fail("expected a term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int level(Kind k) {
  switch (k) {
    case Kind::Join:
      return 0;
    case Kind::Meet:
      return 1;
    case Kind::Comp:
      return 2;
    default:
      return 3;
  }
}

void render_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::Zero:
      out += '0';
      return;
    case Kind::Ide:
      out += '1';
      return;
    case Kind::Var:
      out += t.name();
      return;
    default:
      break;
  }
  const char* sep = t.kind() == Kind::Join ? " + " : (t.kind() == Kind::Meet ? " & " : ";");
  bool first = true;
  for (const auto& c : t.children()) {
    if (!first) out += sep;
    first = false;
    // Same-level children only occur in raw trees; bracket them to keep the shape.
    bool paren = level(c.kind()) <= level(t.kind());
    if (paren) out += '(';
    render_into(c, out);
    if (paren) out += ')';
  }
}

}  // namespace

Term parse_raw(std::string_view text) {
  Parser p(text);
  if (p.at_end()) throw ParseError("empty input", 0);
  Term t = p.term();
  if (!p.at_end()) p.fail("unexpected input");
  return t;
}

Term parse(std::string_view text) { return normalize(parse_raw(text)); }

Equation parse_equation(std::string_view text) {
  Parser p(text);
  if (p.at_end()) throw ParseError("empty input", 0);
  Term lhs = p.term();
  Relation rel;
  if (p.accept("<=")) {
    rel = Relation::Leq;
  } else if (p.accept('=')) {
    rel = Relation::Eq;
  } else {
    p.fail("expected '=' or '<='");
  }
  Term rhs = p.term();
  if (!p.at_end()) p.fail("unexpected input");
  return Equation{normalize(lhs), normalize(rhs), rel};
}

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render(const Equation& e) {
  return render(e.lhs) + (e.relation == Relation::Eq ? " = " : " <= ") + render(e.rhs);
}

}  // namespace omrel
