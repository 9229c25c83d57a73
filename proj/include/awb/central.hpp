#pragma once

// Central extensions, the universal central extension A (x) A -> A of a
// perfect algebra and the four-term homology sequence of an ideal.

#include "awb/checks.hpp"
#include "awb/homology.hpp"
#include "awb/tensor.hpp"

namespace awb {

template <class S>
struct CentralExtension {
  AwbMorphism<S> phi;  // B -> A
  Subspace<S> kernel;
};

/// "surjective", "kernel_central" ([[Ker phi, B]] = 0).
template <class S>
CheckList check_central_extension(const AwbMorphism<S>& phi);

/// Throws PreconditionError when phi is not a central extension.
template <class S>
CentralExtension<S> validate_central_extension(const AwbMorphism<S>& phi);

template <class S>
struct UceResult {
  TensorProduct<S> tensor;  // A (x) A with the self actions
  AwbMorphism<S> psi;       // psi_A
  Subspace<S> kernel;
  Index h1_dim = 0;  // from the chain complex
  CheckList checks;  // "psi_sides_agree", "surjective", "kernel_central", "tensor_perfect", "kernel_is_h1"

  bool ok() const { return checks.ok(); }
  CentralExtension<S> extension() const { return {psi, kernel}; }
};

/// PreconditionError when A is not perfect.
template <class S>
UceResult<S> uce(const FiniteAwb<S>& a, const HomologyOptions& opts = {});

template <class S>
struct UniversalityReport {
  Matrix<S> alpha;         // A (x) A -> B from the first section
  Matrix<S> alpha_second;  // from a second section
  bool sections_differ = false;
  CheckList checks;  // "well_defined", "morphism", "factors_psi", "section_independent"

  bool ok() const { return checks.ok(); }
};

/// The map A (x) A -> B of the universal property: a (.) a' -> b b',
/// a (*) a' -> [b, b'] for preimages b, b'. Built from two different
/// sections of phi and compared.
template <class S>
UniversalityReport<S> universality_check(const UceResult<S>& u, const CentralExtension<S>& ce);

/// u itself, (A (+) V -> A) for dim V = 1, 2, and when Ker psi_A != 0 the
/// quotient of A (x) A by the span of the first half of a kernel basis.
template <class S>
std::vector<std::pair<std::string, CentralExtension<S>>> central_extensions_of(const UceResult<S>& u);

template <class S>
struct FourTermReport {
  CheckList checks;
  Index dim_ker_psi_m = 0;  // Ker (M (x) A -> M)
  Index dim_ker_psi = 0;    // Ker of psi on the semidirect product
  Index h1_a = 0, h1_q = 0;  // Ker psi_A, Ker psi_{A/M}
  Index h1_a_complex = 0, h1_q_complex = 0;  // the same from the chain complex
  Index coker_dim = 0;                        // M / [[A, M]]
  Index rank_k1 = 0, rank_k2 = 0, rank_delta = 0;
  Matrix<S> k1, k2, delta;  // in the coordinates of the kernel bases and the cokernel

  bool ok() const { return checks.ok(); }
};

/// Ker psi_M -> H_1(A) -> H_1(A/M) -> M/[[A,M]] -> 0. The first map is
/// sigma' on Ker psi_M; "exact_at_h1_a_snake" uses Ker psi instead, so a
/// failure of the map choice is told apart from a failure of the sequence.
template <class S>
FourTermReport<S> four_term_sequence(const FiniteAwb<S>& a, const Subspace<S>& m_ideal,
                                     const HomologyOptions& opts = {});

}  // namespace awb
