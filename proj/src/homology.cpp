#include "awb/homology.hpp"

#include <limits>

namespace awb {

namespace {

Index power(Index d, Index k) {
  Index out = 1;
  for (Index i = 0; i < k; ++i) {
    if (d != 0 && out > std::numeric_limits<Index>::max() / d) return std::numeric_limits<Index>::max();
    out *= d;
  }
  return out;
}

std::string word_string(const std::vector<Index>& w, bool circle) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += circle ? " o " : " (x) ";
    s += "e" + std::to_string(w[i]);
  }
  return s;
}

/// Name of basis element c of C_n.
std::string chain_basis_name(Index d, Index n, Index c) {
  if (n == 0) return "e" + std::to_string(c);
  const Index len = n + 1, block = power(d, len);
  const bool circle = c >= block;
  return word_string(word_at(d, len, circle ? c - block : c), circle);
}

template <class S>
HomologyResult<S> homology_from(const SparseMatrix<S>& dn, const SparseMatrix<S>& dn1, Index degree) {
  HomologyResult<S> r;
  r.degree = degree;
  r.cycles = sparse_kernel(dn);
  r.boundaries = column_span(dn1);
  r.cycles_dim = static_cast<Index>(r.cycles.size());
  r.boundaries_dim = r.boundaries.rank();
  EchelonBuilder<S> b = r.boundaries;
  for (const auto& z : r.cycles)
    if (b.insert(z)) r.representatives.push_back(z);
  r.dimension = static_cast<Index>(r.representatives.size());
  if (r.dimension != r.cycles_dim - r.boundaries_dim)
    throw VerificationFailure("homology: boundaries are not contained in the cycles at degree " +
                              std::to_string(degree));
  return r;
}

/// Dimension of the span of the images in the target homology.
template <class S>
Index induced_rank(const std::vector<SparseVec<S>>& images, const EchelonBuilder<S>& target_boundaries) {
  EchelonBuilder<S> b = target_boundaries;
  Index r = 0;
  for (const auto& v : images)
    if (b.insert(v)) ++r;
  return r;
}

/// Columns of the word-merging sum on A^(x)k -> A^(x)(k-1); shared by the
/// (x)-component of d_n and the Hochschild boundary.
template <class S>
void merge_columns(SparseMatrix<S>& out, const SparseTable<S>& prod, Index d, Index k, Index col_offset,
                   Index row_offset, const S& one) {
  const Index count = power(d, k);
  SparseAccumulator<S> acc(out.rows);
  std::vector<Index> target(static_cast<std::size_t>(k - 1));
  for (Index c = 0; c < count; ++c) {
    const auto w = word_at(d, k, c);
    for (Index i = 0; i + 1 < k; ++i) {
      const auto& p = prod.on_basis(w[i], w[i + 1]);
      if (p.empty()) continue;
      const S sign = i % 2 == 0 ? one : S(-one);
      for (Index j = 0; j < i; ++j) target[j] = w[j];
      for (Index j = i + 2; j < k; ++j) target[j - 1] = w[j];
      for (const auto& [m, v] : p) {
        target[i] = m;
        acc.add(row_offset + word_index(d, target), sign * v);
      }
    }
    out.columns[col_offset + c] = acc.take();
  }
}

}  // namespace

Index chain_dim(Index d, Index n) {
  if (n < 0) throw DimensionError("chain_dim: negative degree");
  if (n == 0) return d;
  const Index p = power(d, n + 1);
  return p > std::numeric_limits<Index>::max() / 2 ? std::numeric_limits<Index>::max() : 2 * p;
}

Index word_index(Index d, const std::vector<Index>& word, bool circle) {
  Index idx = 0;
  for (Index w : word) idx = idx * d + w;
  return circle ? idx + power(d, static_cast<Index>(word.size())) : idx;
}

std::vector<Index> word_at(Index d, Index length, Index index) {
  std::vector<Index> w(static_cast<std::size_t>(length));
  for (Index j = length - 1; j >= 0; --j) {
    w[j] = index % d;
    index /= d;
  }
  return w;
}

template <class S>
SparseMatrix<S> boundary_matrix(const FiniteAwb<S>& a, Index n) {
  const Index d = a.dim();
  if (n < 0) throw DimensionError("boundary_matrix: negative degree");
  if (n == 0) return SparseMatrix<S>(0, d);
  const Index len = n + 1;
  const Index src_block = power(d, len), tgt_block = power(d, n);
  SparseMatrix<S> out(chain_dim(d, n - 1), chain_dim(d, n));
  const S one = a.scalar(1);
  const auto& prod = a.product_table();
  const auto& brk = a.bracket_table();

  // (x)-component: alternating merge of neighbours
  merge_columns(out, prod, d, len, 0, 0, one);

  // o-component
  SparseAccumulator<S> acc(out.rows);
  std::vector<Index> tw(static_cast<std::size_t>(n));
  for (Index c = 0; c < src_block; ++c) {
    const auto w = word_at(d, len, c);
    // a_1 (x) .. [a_i, a_(n+1)] .. (x) a_n
    for (Index i = 0; i < n; ++i) {
      const auto& b = brk.on_basis(w[i], w[n]);
      if (b.empty()) continue;
      for (Index j = 0; j < n; ++j) tw[j] = w[j];
      for (const auto& [m, v] : b) {
        tw[i] = m;
        acc.add(word_index(d, tw), v);
      }
    }
    // (-1)^i a_1 o .. a_i a_(i+1) .. o a_(n+1), i = 1 .. n-1
    for (Index i = 0; i + 1 < n; ++i) {
      const auto& p = prod.on_basis(w[i], w[i + 1]);
      if (p.empty()) continue;
      const S sign = i % 2 == 0 ? S(-one) : one;
      for (Index j = 0; j < i; ++j) tw[j] = w[j];
      for (Index j = i + 2; j < len; ++j) tw[j - 1] = w[j];
      for (const auto& [m, v] : p) {
        tw[i] = m;
        acc.add(tgt_block + word_index(d, tw), sign * v);
      }
    }
    out.columns[src_block + c] = acc.take();
  }
  return out;
}

template <class S>
ChainComplex<S> build_complex(const FiniteAwb<S>& a, Index max_degree, const HomologyOptions& opts) {
  if (max_degree < 0) throw InputError("build_complex: negative degree");
  ChainComplex<S> c;
  c.algebra = a;
  c.max_degree = max_degree;
  for (Index n = 0; n <= max_degree; ++n) {
    const Index dim = chain_dim(a.dim(), n);
    if (dim > opts.max_chain_dim)
      throw PreconditionError("build_complex: C_" + std::to_string(n) + " has dimension " + std::to_string(dim) +
                              ", above the cap " + std::to_string(opts.max_chain_dim));
    c.dims.push_back(dim);
  }
  for (Index n = 0; n <= max_degree; ++n) c.boundaries.push_back(boundary_matrix(a, n));
  for (Index n = 2; n <= max_degree; ++n) {
    const auto& lower = c.d(n - 1);
    const auto& upper = c.d(n);
    for (Index col = 0; col < upper.cols; ++col)
      if (!lower.apply(upper.columns[col]).empty())
        throw VerificationFailure("build_complex: d_" + std::to_string(n - 1) + " d_" + std::to_string(n) +
                                  " is nonzero on " + chain_basis_name(a.dim(), n, col));
  }
  return c;
}

template <class S>
HomologyResult<S> homology(const ChainComplex<S>& c, Index n) {
  if (n < 0 || n + 1 > c.max_degree)
    throw InputError("homology: degree " + std::to_string(n) + " needs the complex up to degree " +
                     std::to_string(n + 1) + ", built to " + std::to_string(c.max_degree));
  return homology_from(c.d(n), c.d(n + 1), n);
}

template <class S>
HomologyResult<S> homology(const FiniteAwb<S>& a, Index n, const HomologyOptions& opts) {
  return homology(build_complex(a, n + 1, opts), n);
}

template <class S>
H0Report<S> h0_isomorphism_check(const FiniteAwb<S>& a) {
  H0Report<S> r;
  const Index d = a.dim();
  r.image_d1 = column_span(boundary_matrix(a, 1)).subspace();
  r.derived = derived_algebra(a);
  r.checks.conclusion("image_is_derived", r.image_d1 == r.derived,
                      "dim Im d_1 " + std::to_string(r.image_d1.dim()) + ", dim [[A,A]] " +
                          std::to_string(r.derived.dim()));
  auto ab = abelianization(a);
  r.h0_dim = d - r.image_d1.dim();
  r.abelianization_dim = ab.algebra.dim();
  r.checks.conclusion("dimensions", r.h0_dim == r.abelianization_dim);
  auto q = quotient_space(d, r.image_d1);
  r.iso = ab.space.projection * q.section;
  r.checks.conclusion("iso_invertible", r.iso.rows() == r.iso.cols() && rank(r.iso) == r.iso.rows());
  return r;
}

template <class S>
SparseMatrix<S> chain_map(const AwbMorphism<S>& f, Index n) {
  const Index d = f.source.dim(), e = f.target.dim();
  std::vector<SparseVec<S>> cols(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) cols[i] = to_sparse(Vector<S>(f.matrix.col(i)));
  if (n == 0) {
    SparseMatrix<S> out(e, d);
    out.columns = cols;
    return out;
  }
  const Index len = n + 1, src_block = power(d, len), tgt_block = power(e, len);
  SparseMatrix<S> out(chain_dim(e, n), chain_dim(d, n));
  for (Index c = 0; c < src_block; ++c) {
    const auto w = word_at(d, len, c);
    SparseVec<S> acc = cols[w[0]];
    for (Index j = 1; j < len; ++j) {
      SparseVec<S> next;
      for (const auto& [p, x] : acc)
        for (const auto& [q, y] : cols[w[j]]) next.emplace_back(p * e + q, x * y);
      acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    out.columns[c] = acc;
    for (auto& [k, x] : acc) k += tgt_block;
    out.columns[src_block + c] = std::move(acc);
  }
  return out;
}

template <class S>
CheckList check_chain_map(const AwbMorphism<S>& f, Index max_degree) {
  CheckList out;
  for (Index n = 1; n <= max_degree; ++n) {
    auto lhs = boundary_matrix(f.target, n) * chain_map(f, n);
    auto rhs = chain_map(f, n - 1) * boundary_matrix(f.source, n);
    bool same = true;
    for (Index c = 0; c < lhs.cols && same; ++c) same = lhs.columns[c] == rhs.columns[c];
    out.conclusion("d" + std::to_string(n), same);
  }
  return out;
}

template <class S>
SparseMatrix<S> hochschild_boundary(const AssociativeAlgebra<S>& a, Index k) {
  const Index d = a.dim();
  if (k < 1) throw DimensionError("hochschild_boundary: degree must be at least 1");
  if (k == 1) return SparseMatrix<S>(0, d);
  SparseMatrix<S> out(power(d, k - 1), power(d, k));
  merge_columns(out, SparseTable<S>(a.product), d, k, 0, 0, ScalarTraits<S>::from_int(1, a.field));
  return out;
}

template <class S>
HochschildReport hochschild_comparison(const AssociativeAlgebra<S>& a, const HomologyOptions& opts) {
  HochschildReport r;
  auto t = tautological(a);
  auto cx = build_complex(t, 2, opts);
  std::vector<SparseMatrix<S>> b;
  for (Index k = 1; k <= 3; ++k) b.push_back(hochschild_boundary(a, k));

  // the injection A^(x)(n+1) -> C_n is the identity onto the leading columns
  bool chain = true;
  for (Index n = 1; n <= 2; ++n) {
    const auto& hb = b[static_cast<std::size_t>(n)];
    for (Index c = 0; c < hb.cols && chain; ++c) chain = hb.columns[c] == cx.d(n).columns[c];
  }
  r.checks.conclusion("chain_map", chain);

  for (Index n = 0; n <= 1; ++n) {
    auto hoch = homology_from(b[static_cast<std::size_t>(n)], b[static_cast<std::size_t>(n + 1)], n + 1);
    auto awb = homology(cx, n);
    ComparisonDegree deg;
    deg.degree = n;
    deg.hochschild_dim = hoch.dimension;
    deg.awb_dim = awb.dimension;
    deg.rank = induced_rank(hoch.representatives, awb.boundaries);
    deg.injective = deg.rank == deg.hochschild_dim;
    deg.surjective = deg.rank == deg.awb_dim;
    r.degrees.push_back(deg);
  }
  const auto& d0 = r.degrees[0];
  const auto& d1 = r.degrees[1];
  auto detail = [](const ComparisonDegree& g) {
    return "Hoch " + std::to_string(g.hochschild_dim) + ", H " + std::to_string(g.awb_dim) + ", rank " +
           std::to_string(g.rank);
  };
  r.checks.conclusion("iso_at_0", d0.injective && d0.surjective, detail(d0));
  r.checks.conclusion("epi_at_1", d1.surjective, detail(d1));
  return r;
}

#define AWB_HOMOLOGY_INSTANTIATE(S)                                                                          \
  template SparseMatrix<S> boundary_matrix<S>(const FiniteAwb<S>&, Index);                                   \
  template ChainComplex<S> build_complex<S>(const FiniteAwb<S>&, Index, const HomologyOptions&);             \
  template HomologyResult<S> homology<S>(const ChainComplex<S>&, Index);                                     \
  template HomologyResult<S> homology<S>(const FiniteAwb<S>&, Index, const HomologyOptions&);                \
  template H0Report<S> h0_isomorphism_check<S>(const FiniteAwb<S>&);                                         \
  template SparseMatrix<S> chain_map<S>(const AwbMorphism<S>&, Index);                                       \
  template CheckList check_chain_map<S>(const AwbMorphism<S>&, Index);                                       \
  template SparseMatrix<S> hochschild_boundary<S>(const AssociativeAlgebra<S>&, Index);                      \
  template HochschildReport hochschild_comparison<S>(const AssociativeAlgebra<S>&, const HomologyOptions&);

AWB_HOMOLOGY_INSTANTIATE(Rational)
AWB_HOMOLOGY_INSTANTIATE(ModP)

}  // namespace awb
