#pragma once

// Crossed modules, cat1-algebras with bracket, and the two constructions
// turning one into the other.

#include <optional>
#include <string>
#include <vector>

#include "awb/action.hpp"
#include "awb/awb.hpp"

namespace awb {

/// mu: M -> A together with an action of A on M.
template <class S>
struct CrossedModule {
  AwbMorphism<S> mu;
  AwbAction<S> act;

  const FiniteAwb<S>& m() const { return mu.source; }
  const FiniteAwb<S>& a() const { return mu.target; }
};

/// CM1 on (m, a) basis pairs and CM2 on (m, m') basis pairs. Check ids are
/// "cm1.rdot", "cm1.ldot", "cm1.rstar", "cm1.lstar", "cm2.ldot", "cm2.rdot",
/// "cm2.lstar", "cm2.rstar".
template <class S>
ValidationReport validate_xmod(const CrossedModule<S>& xm);

/// Throws PreconditionError when the data is ill-shaped, mu is not a
/// morphism or the action is invalid, and VerificationFailure when the
/// crossed module identities fail.
template <class S>
void require_valid_xmod(const CrossedModule<S>& xm, const std::string& what);

template <class S>
struct XModStructure {
  Subspace<S> kernel;  // Ker mu in M
  Subspace<S> image;   // Im mu in A
  bool kernel_central = false;
  bool image_ideal = false;
  bool image_acts_trivially = false;
  /// Ker mu as a representation of A / Im mu (present when all three hold).
  std::optional<AwbAction<S>> kernel_representation;

  bool ok() const { return kernel_central && image_ideal && image_acts_trivially; }
};

/// Ker mu central, Im mu an ideal, Im mu acting trivially on Ker mu.
template <class S>
XModStructure<S> xmod_structure(const CrossedModule<S>& xm);

template <class S>
struct SemidirectHoms {
  Semidirect<S> m_by_a;  // M x| A
  Semidirect<S> a_by_a;  // A x| A
  Semidirect<S> m_by_m;  // M x| M
  AwbMorphism<S> mu_id;  // (mu, id): M x| A -> A x| A
  AwbMorphism<S> id_mu;  // (id, mu): M x| M -> M x| A
  AwbMorphism<S> phi;    // (m, a) -> (-m, mu(m) + a)
  ValidationReport report;  // check_morphism of the three maps, merged
};

template <class S>
SemidirectHoms<S> semidirect_homs(const CrossedModule<S>& xm);

// ---------------------------------------------------------------------------
// cat1 structures

/// s, t are given as endomorphisms of R (matrices dim R x dim R) whose
/// images lie in the subalgebra P.
template <class S>
struct Cat1Awb {
  FiniteAwb<S> r;
  Subspace<S> p;
  Matrix<S> s, t;
};

/// Check ids: "s_morphism", "t_morphism", "p_subalgebra", "s_image", "t_image",
/// "s_retract", "t_retract", "ker_product", "ker_bracket".
template <class S>
ValidationReport validate_cat1(const Cat1Awb<S>& c);

/// mu = t restricted to M = Ker s, landing in P; P acts on M by R's operations.
template <class S>
struct Cat1ToXMod {
  CrossedModule<S> xmod;
  Subalgebra<S> kernel_s;  // M inside R
  Subalgebra<S> p;         // P inside R
};

template <class S>
Cat1ToXMod<S> cat1_to_xmod(const Cat1Awb<S>& c);

/// R = M x| A, P = 0 (+) A, s(m,a) = a, t(m,a) = mu(m) + a.
template <class S>
struct XModToCat1 {
  Cat1Awb<S> cat1;
  Semidirect<S> semidirect;
};

template <class S>
XModToCat1<S> xmod_to_cat1(const CrossedModule<S>& xm);

// ---------------------------------------------------------------------------
// Morphisms and round trips

template <class S>
struct XModMorphism {
  CrossedModule<S> source, target;
  Matrix<S> alpha;  // M -> M'
  Matrix<S> beta;   // A -> A'
};

/// Check ids: "alpha_morphism", "beta_morphism", "commutes",
/// "equivariant.ldot", "equivariant.rdot", "equivariant.lstar", "equivariant.rstar".
template <class S>
ValidationReport check_xmod_morphism(const XModMorphism<S>& f);

/// f: R -> R' with f(P) in P', s' f = f s, t' f = f t.
template <class S>
ValidationReport check_cat1_morphism(const Cat1Awb<S>& source, const Cat1Awb<S>& target, const Matrix<S>& f);

template <class S>
struct XModRoundTrip {
  CrossedModule<S> rebuilt;
  XModMorphism<S> iso;  // m -> (m, 0), a -> (0, a)
  ValidationReport report;
  bool invertible = false;
};

/// xm against cat1_to_xmod(xmod_to_cat1(xm)).
template <class S>
XModRoundTrip<S> xmod_roundtrip(const CrossedModule<S>& xm);

template <class S>
struct Cat1RoundTrip {
  Cat1Awb<S> rebuilt;
  Matrix<S> iso;  // rebuilt R = Ker s x| P -> R, (m, p) -> m + p
  ValidationReport report;
  bool invertible = false;
};

/// c against xmod_to_cat1(cat1_to_xmod(c)).
template <class S>
Cat1RoundTrip<S> cat1_roundtrip(const Cat1Awb<S>& c);

// ---------------------------------------------------------------------------
// Associative crossed modules lifted through I and T

template <class S>
struct AssociativeCrossedModule {
  Matrix<S> mu;  // M -> A
  AssociativeAction<S> act;
};

template <class S>
CrossedModule<S> lift_associative_xmod(const AssociativeCrossedModule<S>& xm, LiftMode mode);

// ---------------------------------------------------------------------------
// Standard examples

/// Inclusion of a two-sided ideal with the action by operations.
template <class S>
CrossedModule<S> ideal_inclusion_xmod(const FiniteAwb<S>& a, const Subspace<S>& ideal);

/// The zero map from a representation.
template <class S>
CrossedModule<S> representation_xmod(const AwbAction<S>& rep);

/// A central surjection with the action through preimages.
template <class S>
CrossedModule<S> central_extension_xmod(const AwbMorphism<S>& mu);

}  // namespace awb
