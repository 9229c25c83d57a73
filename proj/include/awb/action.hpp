#pragma once

// Actions of one algebra with bracket on another, semidirect products, and
// compatibility of mutual actions.

#include <string>
#include <vector>

#include "awb/awb.hpp"
#include "awb/formula.hpp"

namespace awb {

/// Four bilinear maps describing an action of `actor` (A) on `actee` (M):
///   ldot(a, m) = ^{a.}m,  rdot(m, a) = m^{.a},
///   lstar(a, m) = ^{a*}m, rstar(m, a) = m^{*a}.
template <class S>
struct AwbAction {
  FiniteAwb<S> actor;
  FiniteAwb<S> actee;
  BilinearMap<S> ldot, rdot, lstar, rstar;

  const BilinearMap<S>& map(int kind) const;  // 0..3 = ldot, rdot, lstar, rstar
  friend bool operator==(const AwbAction& a, const AwbAction& b) {
    return a.ldot == b.ldot && a.rdot == b.rdot && a.lstar == b.lstar && a.rstar == b.rstar;
  }
};

/// Sparse tables of an action, in the layout expected by formula contexts.
template <class S>
struct ActionTables {
  explicit ActionTables(const AwbAction<S>& a)
      : tables{SparseTable<S>(a.ldot), SparseTable<S>(a.rdot), SparseTable<S>(a.lstar), SparseTable<S>(a.rstar)} {}
  std::array<SparseTable<S>, 4> tables;
};

/// The twelve action equations, ids "act.r<row>c<col>" following the
/// two-column display; rows 4..6 only involve the operations of M.
const std::vector<formula::Equation>& action_equations();

struct EquationStatus {
  std::string id;
  std::string text;
  bool vacuous = false;  // 0 = 0 for structural reasons (a zero table in every term)
  std::size_t checks = 0;
  std::size_t violations = 0;
};

template <class S>
ValidationReport validate_action(const AwbAction<S>& act, std::vector<EquationStatus>* status = nullptr);

template <class S>
void require_valid_action(const AwbAction<S>& act, const std::string& what);

template <class S>
AwbAction<S> trivial_action(const FiniteAwb<S>& actor, const FiniteAwb<S>& actee);

/// A subalgebra A and an ideal M of B, with the action of A on M by B's operations.
template <class S>
struct IdealAction {
  Subalgebra<S> actor;
  Subalgebra<S> actee;
  AwbAction<S> action;
};

template <class S>
IdealAction<S> action_from_ideal(const FiniteAwb<S>& b, const Subspace<S>& actor_sub, const Subspace<S>& ideal);

/// Action of A on itself by its own operations.
template <class S>
AwbAction<S> self_action(const FiniteAwb<S>& a);

/// ^{a.}m = f(a)m, m^{.a} = m f(a), ^{a*}m = [f(a),m], m^{*a} = [m,f(a)].
template <class S>
AwbAction<S> action_from_hom(const AwbMorphism<S>& f);

/// Action of A on M through a surjection mu: M -> A with central kernel,
/// using preimages. The result is cross-checked against a second section.
template <class S>
AwbAction<S> action_from_central_surjection(const AwbMorphism<S>& mu);

/// Semidirect product M x| A on M (+) A, M coordinates first.
template <class S>
struct Semidirect {
  FiniteAwb<S> algebra;
  AwbMorphism<S> inject;   // M -> M x| A
  AwbMorphism<S> project;  // M x| A -> A
  AwbMorphism<S> section;  // A -> M x| A
};

template <class S>
Semidirect<S> semidirect(const AwbAction<S>& act);

/// Action recovered from a split extension 0 -> M -i-> B -pi-> A -> 0 with section s.
template <class S>
AwbAction<S> action_from_split_extension(const AwbMorphism<S>& i, const AwbMorphism<S>& pi, const AwbMorphism<S>& s);

// ---------------------------------------------------------------------------
// Mutual actions

/// Actions of M on N and of N on M.
template <class S>
struct MutualActions {
  AwbAction<S> m_on_n;  // actor M, actee N
  AwbAction<S> n_on_m;  // actor N, actee M

  const FiniteAwb<S>& m() const { return n_on_m.actee; }
  const FiniteAwb<S>& n() const { return m_on_n.actee; }
};

/// Sixteen displayed compatibility equations ("cmp.r<row>c<col>") followed
/// by the sixteen with M and N exchanged (suffix ".swap").
const std::vector<formula::Equation>& compatibility_equations();

/// Formula context over M (slot M) and N (slot N) with both actions.
template <class S>
class MutualContext {
 public:
  explicit MutualContext(const MutualActions<S>& mut);
  const formula::Context<S>& context() const { return ctx_; }

 private:
  ActionTables<S> mn_, nm_;
  formula::Context<S> ctx_;
};

template <class S>
ValidationReport check_compatibility(const MutualActions<S>& mut, std::vector<EquationStatus>* status = nullptr);

template <class S>
MutualActions<S> trivial_mutual_actions(const FiniteAwb<S>& m, const FiniteAwb<S>& n);

/// Two ideals M, N of B acting on each other by B's operations.
template <class S>
struct IdealPair {
  Subalgebra<S> m, n;
  MutualActions<S> actions;
};

template <class S>
IdealPair<S> mutual_actions_from_ideals(const FiniteAwb<S>& b, const Subspace<S>& m, const Subspace<S>& n);

/// A acting on itself on both sides.
template <class S>
MutualActions<S> self_mutual_actions(const FiniteAwb<S>& a);

// ---------------------------------------------------------------------------
// Associative actions and the functors I (zero bracket) and T (commutator)

template <class S>
struct AssociativeAction {
  AssociativeAlgebra<S> actor, actee;
  BilinearMap<S> left, right;  // a.m and m.a
};

template <class S>
ValidationReport check_associative_action(const AssociativeAction<S>& act);

enum class LiftMode { trivial_bracket, tautological };

template <class S>
AwbAction<S> lift_associative_action(const AssociativeAction<S>& act, LiftMode mode);

}  // namespace awb
