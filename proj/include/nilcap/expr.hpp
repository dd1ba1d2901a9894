#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "nilcap/errors.hpp"

namespace nilcap {

// Element grammar:
//   expr := ws (term ws)*
//   term := atom ("^" sint)?
//   atom := gen | "[" atom ("," atom)+ "]"
//   gen  := "x" uint        (1-based)
//   sint := "-"? digits
// Inside brackets a generator may carry "^2" ("[x2^2,x1]", "[x2,x1^2]"),
// which is only admitted when allow_squared is set (the 2-adic class-3
// basis labels need it).
struct ExprAtom {
  int gen = 0;           // > 0: generator leaf
  bool squared = false;  // squared-generator label inside a bracket
  std::vector<ExprAtom> args;  // bracket arguments (left-normed), >= 2 entries
};

struct ExprTerm {
  ExprAtom atom;
  mpz_class exponent = 1;
};

using Expr = std::vector<ExprTerm>;

Expr parse_expr(const std::string& input, bool allow_squared);

/// Largest generator index mentioned.
int max_generator(const Expr& e);

/// Evaluates an expression through a group-operations façade providing
///   Elem identity(), Elem generator(int), Elem mul(Elem, Elem),
///   Elem pw(Elem, const mpz_class&), Elem comm(Elem, Elem).
template <class Ops>
auto eval_atom(const ExprAtom& a, const Ops& ops) -> decltype(ops.identity()) {
  if (a.gen > 0) {
    auto g = ops.generator(a.gen);
    return a.squared ? ops.mul(g, g) : g;
  }
  auto acc = eval_atom(a.args[0], ops);
  for (std::size_t i = 1; i < a.args.size(); ++i)
    acc = ops.comm(acc, eval_atom(a.args[i], ops));
  return acc;
}

template <class Ops>
auto eval_expr(const Expr& e, const Ops& ops) -> decltype(ops.identity()) {
  auto acc = ops.identity();
  for (const auto& term : e) acc = ops.mul(acc, ops.pw(eval_atom(term.atom, ops), term.exponent));
  return acc;
}

}  // namespace nilcap
