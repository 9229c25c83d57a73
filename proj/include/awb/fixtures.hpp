#pragma once

// Small named algebras used as examples, test inputs and shipped fixtures.

#include <string>
#include <vector>

#include "awb/action.hpp"
#include "awb/awb.hpp"
#include "awb/tensor.hpp"
#include "awb/xmod.hpp"

namespace awb::fixtures {

/// M_2(K) with basis e11, e12, e21, e22.
template <class S>
AssociativeAlgebra<S> matrix_algebra_2(const FieldSpec& field);

/// K[x]/(x^2) with basis 1, x.
template <class S>
AssociativeAlgebra<S> dual_numbers(const FieldSpec& field);

/// span{x, y} with x*x = y, all other products zero.
template <class S>
AssociativeAlgebra<S> square_to_second(const FieldSpec& field);

/// Zero product on K^d.
template <class S>
AssociativeAlgebra<S> zero_algebra(const FieldSpec& field, Index d);

template <class S>
FiniteAwb<S> abelian(const FieldSpec& field, Index d);

/// x*x = y with zero bracket.
template <class S>
FiniteAwb<S> n2(const FieldSpec& field);

/// M_2 with commutator bracket.
template <class S>
FiniteAwb<S> t_m2(const FieldSpec& field);

/// M_2 with zero bracket.
template <class S>
FiniteAwb<S> i_m2(const FieldSpec& field);

/// T(M_2) (+) T(M_2).
template <class S>
FiniteAwb<S> t_m2_squared(const FieldSpec& field);

/// Zero product, Heisenberg Lie bracket [p,q] = z on basis p, q, z.
template <class S>
FiniteAwb<S> heisenberg(const FieldSpec& field);

/// Zero product, bracket [x,y] = [y,x] = x.
template <class S>
FiniteAwb<S> symmetric_bracket(const FieldSpec& field);

/// Zero product with the bracket of sl2. Perfect, with nonzero H_1.
template <class S>
FiniteAwb<S> sl2_bracket(const FieldSpec& field);

/// K[x,y]/(x^2, y^2) on 1, x, y, xy with the Poisson bracket {x,y} = xy.
template <class S>
FiniteAwb<S> poisson_truncated(const FieldSpec& field);

/// Dual numbers with (zero) commutator bracket.
template <class S>
FiniteAwb<S> t_dual_numbers(const FieldSpec& field);

/// Deliberately invalid structures, built without validation.
/// x*x = x and [x,x] = x: violates [ab,c] = [a,c]b + a[b,c] at (0,0,0).
template <class S>
FiniteAwb<S> corrupted_idempotent(const FieldSpec& field);
/// x*y = y, y*x = x, others zero: not associative ((xy)x = x, x(yx) = x*x = 0).
template <class S>
FiniteAwb<S> corrupted_nonassociative(const FieldSpec& field);
/// M_2 with bracket [a,b] = ab + ba: violates the bracket identity.
template <class S>
FiniteAwb<S> corrupted_anticommutator(const FieldSpec& field);

/// Every shipped valid algebra over the field, in a fixed order.
template <class S>
std::vector<FiniteAwb<S>> corpus(const FieldSpec& field);

/// Perfect algebras of the corpus.
template <class S>
std::vector<FiniteAwb<S>> perfect_corpus(const FieldSpec& field);

/// T(M_2) acting on an abelian copy of M_2 by products and commutators.
template <class S>
AwbAction<S> matrix_representation(const FieldSpec& field);

/// A (+) V -> A for abelian V of dimension v; V is central.
template <class S>
AwbMorphism<S> split_central_extension(const FiniteAwb<S>& a, Index v);

template <class S>
struct NamedXMod {
  std::string name;
  CrossedModule<S> xmod;
};

/// Ideal inclusions, a representation, the identity, a central extension and
/// a zero map, all valid crossed modules.
template <class S>
std::vector<NamedXMod<S>> xmod_corpus(const FieldSpec& field);

template <class S>
struct NamedPair {
  std::string name;
  MutualActions<S> actions;
};

/// Compatible mutual actions: every corpus algebra acting on itself, ideal
/// pairs of t_m2_sq and n2, and trivial actions between abelian algebras.
template <class S>
std::vector<NamedPair<S>> compatible_pairs(const FieldSpec& field);

/// Trivial actions between abelian algebras of dimensions (p, q), p <= q <= 3.
template <class S>
std::vector<NamedPair<S>> abelian_trivial_pairs(const FieldSpec& field);

/// A = B (+) B with 0 -> B -> A -> B -> 0 (first summand in, projection onto
/// the second), N = the second summand; all actions by A's operations.
template <class S>
RightExactnessInput<S> summand_sequence(const FiniteAwb<S>& b);

}  // namespace awb::fixtures
