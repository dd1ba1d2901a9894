#include "nilcap/expr.hpp"

#include <cctype>

namespace nilcap {

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  bool allow_squared;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos); }

  unsigned long parse_uint() {
    if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a digit");
    unsigned long v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<unsigned long>(peek() - '0');
      if (v > 1000000) fail("number too large");
      ++pos;
    }
    return v;
  }

  mpz_class parse_sint() {
    bool neg = false;
    if (!done() && peek() == '-') {
      neg = true;
      ++pos;
    }
    if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a digit");
    std::size_t start = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    mpz_class v(s.substr(start, pos - start));
    return neg ? mpz_class(-v) : v;
  }

  ExprAtom parse_atom(bool inside_bracket) {
    if (done()) fail("expected a generator or '['");
    if (peek() == 'x') {
      ++pos;
      ExprAtom a;
      a.gen = static_cast<int>(parse_uint());
      if (a.gen < 1) fail("generator indices are 1-based");
      if (inside_bracket && allow_squared && !done() && peek() == '^') {
        // only the literal "^2" is a label here; anything else is an error
        ++pos;
        if (done() || peek() != '2') fail("only squared generators appear inside brackets");
        ++pos;
        if (!done() && std::isdigit(static_cast<unsigned char>(peek())))
          fail("only squared generators appear inside brackets");
        a.squared = true;
      }
      return a;
    }
    if (peek() == '[') {
      ++pos;
      ExprAtom a;
      a.args.push_back(parse_atom(true));
      if (done() || peek() != ',') fail("a bracket needs at least two components");
      while (!done() && peek() == ',') {
        ++pos;
        a.args.push_back(parse_atom(true));
      }
      if (done() || peek() != ']') fail("expected ',' or ']'");
      ++pos;
      return a;
    }
    fail("expected a generator or '['");
  }

  Expr parse() {
    Expr out;
    skip_ws();
    while (!done()) {
      ExprTerm term;
      term.atom = parse_atom(false);
      if (!done() && peek() == '^') {
        ++pos;
        term.exponent = parse_sint();
      }
      out.push_back(std::move(term));
      if (!done() && !std::isspace(static_cast<unsigned char>(peek())))
        fail("expected whitespace between terms");
      skip_ws();
    }
    return out;
  }
};

int max_gen_atom(const ExprAtom& a) {
  int m = a.gen;
  for (const auto& sub : a.args) m = std::max(m, max_gen_atom(sub));
  return m;
}

}  // namespace

Expr parse_expr(const std::string& input, bool allow_squared) {
  Parser p{input, 0, allow_squared};
  return p.parse();
}

int max_generator(const Expr& e) {
  int m = 0;
  for (const auto& t : e) m = std::max(m, max_gen_atom(t.atom));
  return m;
}

}  // namespace nilcap
