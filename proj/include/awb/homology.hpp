#pragma once

// Homology with trivial coefficients. C_0 = A and C_n = A^(x)(n+1) (+) A^(x)(n+1)
// for n >= 1, the (x)-component first, then the o-component; words are
// indexed lexicographically in their factor indices.

#include <string>
#include <vector>

#include "awb/awb.hpp"
#include "awb/checks.hpp"

namespace awb {

struct HomologyOptions {
  Index max_chain_dim = 100000;  // largest C_n that build_complex will assemble
};

/// dim C_n for an algebra of dimension d.
Index chain_dim(Index d, Index n);

/// Index of the word (w_1, ..., w_k) in A^(x)k, plus offset d^k for the
/// o-component.
Index word_index(Index d, const std::vector<Index>& word, bool circle = false);
std::vector<Index> word_at(Index d, Index length, Index index);

/// d_n: C_n -> C_{n-1}. d_0 is the zero map A -> 0.
template <class S>
SparseMatrix<S> boundary_matrix(const FiniteAwb<S>& a, Index n);

template <class S>
struct ChainComplex {
  FiniteAwb<S> algebra;
  Index max_degree = 0;
  std::vector<Index> dims;                 // C_0 .. C_N
  std::vector<SparseMatrix<S>> boundaries;  // d_0 .. d_N

  const SparseMatrix<S>& d(Index n) const { return boundaries.at(static_cast<std::size_t>(n)); }
};

/// Assembles d_0..d_N and verifies d_{n-1} d_n = 0 (VerificationFailure
/// naming the first offending word otherwise). PreconditionError when a
/// chain space exceeds the cap.
template <class S>
ChainComplex<S> build_complex(const FiniteAwb<S>& a, Index max_degree, const HomologyOptions& opts = {});

template <class S>
struct HomologyResult {
  Index degree = 0;
  Index dimension = 0;
  Index cycles_dim = 0, boundaries_dim = 0;
  std::vector<SparseVec<S>> cycles;           // basis of Ker d_n
  EchelonBuilder<S> boundaries{0};            // Im d_{n+1}
  std::vector<SparseVec<S>> representatives;  // cycles independent modulo boundaries
};

/// H_n = Ker d_n / Im d_{n+1}; the complex must reach degree n + 1.
template <class S>
HomologyResult<S> homology(const ChainComplex<S>& c, Index n);

/// Builds the complex to degree n + 1 and takes H_n.
template <class S>
HomologyResult<S> homology(const FiniteAwb<S>& a, Index n, const HomologyOptions& opts = {});

template <class S>
struct H0Report {
  Subspace<S> image_d1;
  Subspace<S> derived;  // [[A, A]]
  Index h0_dim = 0, abelianization_dim = 0;
  Matrix<S> iso;  // A / Im d_1 -> A^ab on the canonical quotient bases
  CheckList checks;  // "image_is_derived", "dimensions", "iso_invertible"

  bool ok() const { return checks.ok(); }
};

template <class S>
H0Report<S> h0_isomorphism_check(const FiniteAwb<S>& a);

/// f^(x)(n+1) on both components of C_n (f on C_0).
template <class S>
SparseMatrix<S> chain_map(const AwbMorphism<S>& f, Index n);

/// d_n f_n = f_{n-1} d_n for 1 <= n <= max_degree.
template <class S>
CheckList check_chain_map(const AwbMorphism<S>& f, Index max_degree);

/// Trivial-coefficient Hochschild complex: C_k = A^(x)k, k >= 1, with the
/// inner-face boundary sum (-1)^(i+1) a_1 (x) .. a_i a_(i+1) .. (x) a_k.
template <class S>
SparseMatrix<S> hochschild_boundary(const AssociativeAlgebra<S>& a, Index k);

struct ComparisonDegree {
  Index degree = 0;  // n: Hoch_{n+1}(A) -> H_n(T(A))
  Index hochschild_dim = 0, awb_dim = 0, rank = 0;
  bool injective = false, surjective = false;
};

struct HochschildReport {
  std::vector<ComparisonDegree> degrees;  // n = 0, 1
  CheckList checks;  // "chain_map", "iso_at_0", "epi_at_1"

  bool ok() const { return checks.ok(); }
};

template <class S>
HochschildReport hochschild_comparison(const AssociativeAlgebra<S>& a, const HomologyOptions& opts = {});

}  // namespace awb
