#pragma once

// The non-abelian tensor product M (x) N of two algebras with bracket acting
// compatibly on each other, presented as a quotient of the span of the
// generators m (.) n, n (.) m, m (*) n, n (*) m.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "awb/action.hpp"
#include "awb/awb.hpp"
#include "awb/checks.hpp"
#include "awb/formula.hpp"
#include "awb/xmod.hpp"

namespace awb {

enum class TensorKind { odot = 0, circledast = 1 };
enum class Orientation { mn = 0, nm = 1 };

/// One generator: kind, orientation and the basis indices of its two
/// factors in written order (i indexes M for mn, N for nm).
struct TensorGeneratorIndex {
  TensorKind kind = TensorKind::odot;
  Orientation orientation = Orientation::mn;
  Index i = 0, j = 0;

  friend bool operator==(const TensorGeneratorIndex&, const TensorGeneratorIndex&) = default;
};

/// Blocks ordered (odot, mn), (odot, nm), (circledast, mn), (circledast, nm);
/// row-major inside a block.
Index flat_generator(Index dim_m, Index dim_n, const TensorGeneratorIndex& g);
TensorGeneratorIndex generator_at(Index dim_m, Index dim_n, Index flat);
/// "od(m0,n1)", "ca(n2,m0)", ...
std::string generator_name(const TensorGeneratorIndex& g);

// ---------------------------------------------------------------------------
// Presentation tables

/// Every relation family used to build M (x) N: the displayed families with
/// st(...) expanded to od and ca, then the M <-> N exchanged families that
/// are not already present. Ids "rel.r<row>c<col>.<od|ca>" for the
/// interchange lines, "rel.r<row>c<col>" for the others, suffix ".swap".
const std::vector<formula::Equation>& tensor_relation_families();

struct TensorFamilyCounts {
  std::size_t displayed_lines = 0;     // lines of the display (st counted once)
  std::size_t displayed_families = 0;  // after expanding st into od and ca
  std::size_t swapped_generated = 0;   // exchanged copies produced
  std::size_t swapped_new = 0;         // exchanged copies not already present
  std::size_t total = 0;
};

const TensorFamilyCounts& tensor_family_counts();

/// Product and bracket of two generators. left/right are generator patterns
/// in variables (m, n) and (m2, n2); product/bracket are the results.
struct StructureRule {
  std::string left, right, product, bracket;
};

const std::vector<StructureRule>& tensor_structure_rules();

/// Action of an element of M (variable m) or N (variable n) on a generator
/// pattern in (m2, n2): results for ldot, rdot, lstar, rstar.
struct ActionRule {
  std::string actee;
  std::array<std::string, 4> result;
};

const std::vector<ActionRule>& tensor_action_rules(formula::Sort actor);

/// psi_M or psi_N on the four generator patterns (variables m, n).
const std::vector<std::pair<std::string, std::string>>& tensor_psi_rules(formula::Sort target);

// ---------------------------------------------------------------------------
// The tensor product

template <class S>
struct TensorProduct {
  MutualActions<S> mut;
  SparseQuotient<S> quotient;  // generator space modulo the relation span
  FiniteAwb<S> awb;            // on the quotient basis
  std::size_t relation_vectors = 0;  // nonzero relation instances generated

  const FiniteAwb<S>& m() const { return mut.m(); }
  const FiniteAwb<S>& n() const { return mut.n(); }
  Index generator_dim() const { return 4 * m().dim() * n().dim(); }
  Index relation_rank() const { return quotient.relations().rank(); }
  Subspace<S> relations() const { return quotient.relations().subspace(); }

  /// Quotient coordinates of a generator-space vector.
  Vector<S> embed(const SparseVec<S>& v) const { return quotient.project_dense(v); }
  /// dim x generator_dim matrix of embed.
  Matrix<S> embedding() const;
  Vector<S> generator(const TensorGeneratorIndex& g) const;
};

/// Span of all relation instances. Throws PreconditionError when the
/// actions are not compatible.
template <class S>
Subspace<S> relation_span(const MutualActions<S>& mut);

/// Builds the quotient, checks that product and bracket of generators
/// descend (VerificationFailure with the offending relation otherwise) and
/// that the result is an algebra with bracket (AxiomError otherwise).
template <class S>
TensorProduct<S> nonabelian_tensor(const MutualActions<S>& mut, std::string name = {});

/// x (.) y or x (*) y for elements x, y of the factors in written order.
template <class S>
Vector<S> pure_tensor(const TensorProduct<S>& t, const Vector<S>& x, const Vector<S>& y, TensorKind kind,
                      Orientation orientation);

template <class S>
struct PsiMaps {
  AwbMorphism<S> psi_m;  // M (x) N -> M
  AwbMorphism<S> psi_n;  // M (x) N -> N
};

/// Checks both maps vanish on the relations (VerificationFailure otherwise).
template <class S>
PsiMaps<S> psi_maps(const TensorProduct<S>& t);

template <class S>
struct InducedActions {
  AwbAction<S> by_m;  // actor M, actee M (x) N
  AwbAction<S> by_n;  // actor N, actee M (x) N
};

/// Checks descent to the quotient (VerificationFailure otherwise).
template <class S>
InducedActions<S> induced_actions(const TensorProduct<S>& t);

template <class S>
struct TensorXMods {
  CrossedModule<S> over_m;  // psi_M with the induced action of M
  CrossedModule<S> over_n;
};

template <class S>
TensorXMods<S> xmod_on_tensor(const TensorProduct<S>& t);

/// f: M -> M' and g: N -> N' preserve the mutual actions. Check ids
/// "f.ldot", "f.rdot", "f.lstar", "f.rstar", "g.ldot", "g.rdot", "g.lstar",
/// "g.rstar" (f on actions of N on M, g on actions of M on N).
template <class S>
ValidationReport check_equivariance(const Matrix<S>& f, const Matrix<S>& g, const MutualActions<S>& source,
                                    const MutualActions<S>& target);

/// f (x) g on generators. Throws PreconditionError when f or g is not a
/// morphism or not equivariant, VerificationFailure when the map does not
/// descend.
template <class S>
AwbMorphism<S> tensor_functor(const AwbMorphism<S>& f, const AwbMorphism<S>& g, const TensorProduct<S>& t,
                              const TensorProduct<S>& target);

// ---------------------------------------------------------------------------
// Trivial actions

template <class S>
struct TrivialTensorReport {
  TensorProduct<S> tensor;
  Index m_ab = 0, n_ab = 0;  // dimensions of the abelianizations
  Index expected_dim = 0;    // 4 m_ab n_ab
  std::array<Index, 4> block_dims{};           // generator blocks surviving in the quotient
  std::array<Index, 4> expected_block_dims{};  // m_ab n_ab in each block
  /// M^ab (x) N^ab, N^ab (x) M^ab, M^ab (x) N^ab, N^ab (x) M^ab -> M (x) N on
  /// generators built from sections of the abelianizations.
  Matrix<S> block_map;
  CheckList checks;  // "abelian", "dimension", "blocks", "block_map_bijective"

  bool ok() const { return checks.ok(); }
};

template <class S>
TrivialTensorReport<S> trivial_tensor_check(const FiniteAwb<S>& m, const FiniteAwb<S>& n);

// ---------------------------------------------------------------------------
// Exactness

/// 0 -> M1 -f-> M2 -g-> M3 -> 0 and a fixed N with actions on each Mi.
template <class S>
struct RightExactnessInput {
  AwbMorphism<S> f, g;
  MutualActions<S> mut1, mut2, mut3;  // Mi with N
};

template <class S>
struct RightExactnessReport {
  CheckList checks;
  Index dim1 = 0, dim2 = 0, dim3 = 0;  // dimensions of Mi (x) N
  Index rank_f = 0, rank_g = 0;        // ranks of f (x) id and g (x) id

  bool ok() const { return checks.ok(); }
};

template <class S>
RightExactnessReport<S> right_exactness_check(const RightExactnessInput<S>& in);

template <class S>
struct IdealSequenceReport {
  CheckList checks;
  Index dim_ma = 0, dim_am = 0, dim_aa = 0, dim_qq = 0;
  Index rank_sigma = 0, rank_tau = 0;
  Subspace<S> image_sigma;  // inside A (x) A
  AwbMorphism<S> sigma, tau;  // sigma: columns of M (x) A first, then A (x) M
  TensorProduct<S> t_ma, t_am, t_aa, t_qq;
  QuotientAwb<S> quotient;  // A -> A/M
  Matrix<S> m_inclusion;    // M -> A on the canonical basis of the ideal

  bool ok() const { return checks.ok(); }
};

/// (M (x) A) x| (A (x) M) -sigma-> A (x) A -tau-> A/M (x) A/M -> 0 with self
/// and ideal actions. A (x) M acts on M (x) A through psi_M: A (x) M -> M.
template <class S>
IdealSequenceReport<S> ideal_tensor_sequence(const FiniteAwb<S>& a, const Subspace<S>& m_ideal);

// ---------------------------------------------------------------------------
// The quotient (A(x)A (+) A(x)A) / I_A

template <class S>
struct IaQuotient {
  QuotientSpace<S> space;  // ambient 2 d^2: the (x) block, then the o block
  Subspace<S> ia;          // I_A
  bool perfect = false;
  /// Into A (x) A: a1 (x) a2 -> a1 (.) a2, a1 o a2 -> a1 (*) a2. Present for
  /// perfect A only.
  std::optional<Matrix<S>> to_tensor;
  CheckList checks;  // "well_defined", "bijective", "psi_matches_evaluation"

  Index dim() const { return space.dim(); }
};

template <class S>
IaQuotient<S> ia_quotient(const FiniteAwb<S>& a);

/// Basis of A^(x)2 (+) A^(x)2 spanning I_A, one vector per basis triple and
/// relation kind: (a1a2)(x)a3 - a1(x)(a2a3) and
/// [a1,a3](x)a2 + a1(x)[a2,a3] - (a1a2)oa3.
template <class S>
std::vector<SparseVec<S>> ia_generators(const FiniteAwb<S>& a);

}  // namespace awb
