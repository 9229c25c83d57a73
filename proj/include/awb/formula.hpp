#pragma once

// A small term language for the identities that define actions,
// compatibility and tensor relations. Each identity is written once as text,
// e.g. "ld(mul(a1,a2),m) = ld(a1,ld(a2,m))", and evaluated multilinearly on
// basis tuples.
//
//   mul(x,y), br(x,y)       product / bracket inside one algebra
//   ld(x,y)  = ^{x.}y       rd(y,x) = y^{.x}
//   ls(x,y)  = ^{x*}y       rs(y,x) = y^{*x}
//   od(x,y), ca(x,y)        generators x (.) y and x (*) y of a tensor product
//   st(x,y)                 stands for both od and ca (expanded by the caller)
//
// A variable's sort is fixed by its first letter: m -> M, n -> N, a -> A.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "awb/awb.hpp"
#include "awb/bilinear.hpp"

namespace awb::formula {

enum class Sort { M = 0, N = 1, A = 2, G = 3 };
enum class Op { var, mul, br, ld, rd, ls, rs, od, ca, st };

std::string_view sort_name(Sort s);

struct Expr {
  Op op = Op::var;
  std::string name;  // variable name when op == var
  int slot = -1;     // variable slot, assigned when compiled into an Equation
  Sort sort = Sort::G;  // cached result sort, assigned with the slot
  std::vector<Expr> args;
};

struct Term {
  int sign = 1;
  Expr expr;
};

/// Signed sum of monomials.
using Formula = std::vector<Term>;

Formula parse(std::string_view text);
std::string to_string(const Expr& e);
std::string to_string(const Formula& f);

Sort variable_sort(std::string_view name);
/// Result sort; throws InputError on ill-sorted input.
Sort sort_of(const Expr& e);

/// Exchange the roles of M and N (variable letters m <-> n).
Expr swapped(const Expr& e);
Formula swapped(const Formula& f);
/// Replace every st(...) by the given kind (od or ca).
Formula with_star(const Formula& f, Op kind);

struct Equation {
  std::string id;
  Formula lhs, rhs;
  std::vector<std::string> variables;  // order of first appearance
  std::vector<Sort> variable_sorts;

  std::string text() const { return to_string(lhs) + " = " + to_string(rhs); }
};

/// Parses "lhs = rhs", checks both sides are well-sorted with equal sort.
Equation make_equation(std::string id, std::string_view text);
/// A single formula compiled like the left side of an equation; rhs is empty.
Equation make_term(std::string id, std::string_view text);
Equation swapped(const Equation& e, std::string id);
Equation with_star(const Equation& e, Op kind, std::string id);
Sort result_sort(const Equation& e);

/// Operation tables for evaluating formulas. Action tables are indexed
/// [actor sort][actee sort][ld, rd, ls, rs]; ld/ls take (actor, actee) and
/// rd/rs take (actee, actor), matching the argument order of the term.
template <class S>
struct Context {
  std::array<Index, 3> dims{0, 0, 0};
  std::array<const SparseTable<S>*, 3> product{};
  std::array<const SparseTable<S>*, 3> bracket{};
  std::array<std::array<std::array<const SparseTable<S>*, 4>, 3>, 3> action{};
  FieldSpec field;

  /// Size of the generator space (od and ca, both orientations) of M and N.
  Index generator_dim() const { return 4 * dims[0] * dims[1]; }
  Index dim(Sort s) const { return s == Sort::G ? generator_dim() : dims[static_cast<int>(s)]; }
  S one() const { return ScalarTraits<S>::from_int(1, field); }
};

/// Flat generator index for od/ca with the given orientation. Blocks are
/// (od, MN), (od, NM), (ca, MN), (ca, NM); inside a block (i, j) is row-major.
Index generator_index(Index dim_m, Index dim_n, Op kind, bool mn, Index i, Index j);

template <class S>
SparseVec<S> evaluate(const Formula& f, const Context<S>& ctx, const std::vector<SparseVec<S>>& values);

/// True when every monomial of the equation contains an operation whose
/// table is identically zero, so the equation reads 0 = 0 on any input.
template <class S>
bool vanishes_identically(const Equation& e, const Context<S>& ctx);

/// Checks the equation on every basis tuple; witnesses carry the tuple.
template <class S>
ValidationReport check_equation(const Equation& e, const Context<S>& ctx);

/// Calls visit(tuple, lhs, rhs) for every basis tuple.
template <class S, class Visit>
void for_each_instance(const Equation& e, const Context<S>& ctx, Visit&& visit) {
  const std::size_t k = e.variables.size();
  std::vector<Index> idx(k, 0);
  std::vector<Index> bound(k);
  for (std::size_t v = 0; v < k; ++v) {
    bound[v] = ctx.dim(e.variable_sorts[v]);
    if (bound[v] == 0) return;
  }
  std::vector<SparseVec<S>> values(k);
  const S one = ctx.one();
  while (true) {
    for (std::size_t v = 0; v < k; ++v) values[v] = {{idx[v], one}};
    SparseVec<S> l = evaluate(e.lhs, ctx, values);
    SparseVec<S> r = evaluate(e.rhs, ctx, values);
    visit(static_cast<const std::vector<Index>&>(idx), l, r);
    std::size_t v = k;
    while (v > 0) {
      --v;
      if (++idx[v] < bound[v]) break;
      idx[v] = 0;
      if (v == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace awb::formula
