#pragma once

// Exact linear algebra over any field scalar: reduced row-echelon form,
// kernels and images, canonical subspaces, quotients, and a sparse
// incremental echelon basis for large relation systems.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "awb/scalar.hpp"

namespace awb {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Sorted (index, nonzero value) pairs.
template <class S>
using SparseVec = std::vector<std::pair<Index, S>>;

class DimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class Derived>
bool exact_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class A, class B>
bool exact_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <class S>
Vector<S> unit_vector(Index n, Index i) {
  Vector<S> v = Vector<S>::Zero(n);
  v(i) = S(1);
  return v;
}

// ---------------------------------------------------------------------------
// Sparse vectors

template <class S>
SparseVec<S> to_sparse(const Vector<S>& v) {
  SparseVec<S> out;
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) out.emplace_back(i, v(i));
  return out;
}

template <class S>
Vector<S> to_dense(const SparseVec<S>& v, Index n) {
  Vector<S> out = Vector<S>::Zero(n);
  for (const auto& [i, x] : v) out(i) = x;
  return out;
}

/// y + alpha * x
template <class S>
SparseVec<S> axpy(const SparseVec<S>& y, const S& alpha, const SparseVec<S>& x) {
  SparseVec<S> out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(*iy++);
    } else if (iy == y.end() || ix->first < iy->first) {
      S v = alpha * ix->second;
      if (!is_zero(v)) out.emplace_back(ix->first, std::move(v));
      ++ix;
    } else {
      S v = iy->second + alpha * ix->second;
      if (!is_zero(v)) out.emplace_back(iy->first, std::move(v));
      ++iy;
      ++ix;
    }
  }
  return out;
}

template <class S>
SparseVec<S> scaled(const SparseVec<S>& x, const S& alpha) {
  SparseVec<S> out;
  if (is_zero(alpha)) return out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) out.emplace_back(i, alpha * v);
  return out;
}

/// Accumulates many sparse terms through a dense scratch buffer.
template <class S>
class SparseAccumulator {
 public:
  explicit SparseAccumulator(Index n) : values_(static_cast<std::size_t>(n), S(0)), touched_(n, false) {}

  void add(Index i, const S& x) {
    if (!touched_[i]) {
      touched_[i] = true;
      order_.push_back(i);
    }
    values_[i] += x;
  }

  void add(const SparseVec<S>& v, const S& alpha) {
    for (const auto& [i, x] : v) add(i, alpha * x);
  }

  SparseVec<S> take() {
    std::sort(order_.begin(), order_.end());
    SparseVec<S> out;
    for (Index i : order_) {
      if (!is_zero(values_[i])) out.emplace_back(i, values_[i]);
      values_[i] = S(0);
      touched_[i] = false;
    }
    order_.clear();
    return out;
  }

 private:
  std::vector<S> values_;
  std::vector<bool> touched_;
  std::vector<Index> order_;
};

// ---------------------------------------------------------------------------
// Dense elimination

template <class S>
struct Rref {
  Matrix<S> rows;  // nonzero rows only
  std::vector<Index> pivots;
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Canonical reduced row-echelon form: leftmost pivot, top-down elimination.
template <class Derived>
Rref<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  Matrix<S> a = input;
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index found = -1;
    for (Index i = r; i < a.rows(); ++i)
      if (!is_zero(a(i, c))) {
        found = i;
        break;
      }
    if (found < 0) continue;
    if (found != r) a.row(found).swap(a.row(r));
    S inv = S(1) / a(r, c);
    for (Index j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (Index i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      S f = a(i, c);
      for (Index j = c; j < a.cols(); ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {a.topRows(r), std::move(pivots)};
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank();
}

// ---------------------------------------------------------------------------
// Subspaces

/// Subspace of K^n stored as its canonical RREF basis (one row per vector).
/// Two subspaces are equal as sets iff their bases are identical.
template <class S>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index n) {
    Subspace s;
    s.ambient_ = n;
    s.basis_ = Matrix<S>::Zero(0, n);
    return s;
  }

  static Subspace full(Index n) { return span_rows(Matrix<S>::Identity(n, n)); }

  template <class Derived>
  static Subspace span_rows(const Eigen::MatrixBase<Derived>& rows) {
    auto r = rref(rows);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = std::move(r.rows);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  template <class Derived>
  static Subspace span_columns(const Eigen::MatrixBase<Derived>& cols) {
    return span_rows(cols.transpose());
  }

  static Subspace span(Index n, const std::vector<Vector<S>>& vectors) {
    Matrix<S> rows(static_cast<Index>(vectors.size()), n);
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      if (vectors[k].size() != n) throw DimensionError("Subspace::span: vector length mismatch");
      rows.row(static_cast<Index>(k)) = vectors[k].transpose();
    }
    return span_rows(rows);
  }

  /// Adopts rows already in canonical RREF (as produced by EchelonBuilder).
  static Subspace from_rref(Index n, Matrix<S> rows, std::vector<Index> pivots) {
    Subspace s;
    s.ambient_ = n;
    s.basis_ = std::move(rows);
    s.pivots_ = std::move(pivots);
    return s;
  }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  const Matrix<S>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  Vector<S> basis_vector(Index k) const { return basis_.row(k).transpose(); }
  /// ambient × dim, columns are the basis vectors
  Matrix<S> basis_columns() const { return basis_.transpose(); }

  /// v minus its component in the subspace along the pivot coordinates
  Vector<S> residual(Vector<S> v) const {
    check(v);
    for (Index k = 0; k < dim(); ++k) {
      S f = v(pivots_[k]);
      if (!is_zero(f)) v -= f * basis_.row(k).transpose();
    }
    return v;
  }

  bool contains(const Vector<S>& v) const { return exact_zero(residual(v)); }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("Subspace::contains: ambient dimension mismatch");
    for (Index k = 0; k < other.dim(); ++k)
      if (!contains(other.basis_vector(k))) return false;
    return true;
  }

  /// Coordinates of v (assumed in the subspace) in the canonical basis.
  Vector<S> coordinates(const Vector<S>& v) const {
    check(v);
    Vector<S> c(dim());
    for (Index k = 0; k < dim(); ++k) c(k) = v(pivots_[k]);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && exact_equal(a.basis_, b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  void check(const Vector<S>& v) const {
    if (v.size() != ambient_) throw DimensionError("Subspace: vector length mismatch");
  }

  Index ambient_ = 0;
  Matrix<S> basis_;
  std::vector<Index> pivots_;
};

/// dim × ambient matrix reading off canonical coordinates (the pivot entries).
template <class S>
Matrix<S> pivot_selector(const Subspace<S>& s) {
  Matrix<S> c = Matrix<S>::Zero(s.dim(), s.ambient_dim());
  for (Index k = 0; k < s.dim(); ++k) c(k, s.pivots()[k]) = S(1);
  return c;
}

/// Null space of m as a subspace of K^cols.
template <class Derived>
Subspace<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  auto r = rref(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : r.pivots) is_pivot[p] = true;
  std::vector<Vector<S>> vecs;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<S> v = Vector<S>::Zero(n);
    v(f) = S(1);
    for (Index k = 0; k < r.rank(); ++k) v(r.pivots[k]) = -r.rows(k, f);
    vecs.push_back(std::move(v));
  }
  return Subspace<S>::span(n, vecs);
}

/// Column space of m as a subspace of K^rows.
template <class Derived>
Subspace<typename Derived::Scalar> image(const Eigen::MatrixBase<Derived>& m) {
  return Subspace<typename Derived::Scalar>::span_columns(m);
}

template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("sum: ambient dimension mismatch");
  Matrix<S> rows(a.dim() + b.dim(), a.ambient_dim());
  rows << a.basis(), b.basis();
  return Subspace<S>::span_rows(rows);
}

template <class S>
Subspace<S> intersection(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersection: ambient dimension mismatch");
  const Index n = a.ambient_dim();
  // x = A^T u = B^T v  <=>  [A^T | -B^T] (u; v) = 0
  Matrix<S> stacked(n, a.dim() + b.dim());
  stacked << a.basis().transpose(), -b.basis().transpose();
  auto ker = kernel_basis(stacked);
  Matrix<S> vecs = (a.basis().transpose() * ker.basis().leftCols(a.dim()).transpose()).transpose();
  return Subspace<S>::span_rows(vecs);
}

/// Preimage-free image of a subspace under a linear map (target × source).
template <class S>
Subspace<S> map_subspace(const Matrix<S>& f, const Subspace<S>& s) {
  if (f.cols() != s.ambient_dim()) throw DimensionError("map_subspace: shape mismatch");
  return Subspace<S>::span_columns(f * s.basis_columns());
}

/// Preimage f^{-1}(s) as a subspace of the source.
template <class S>
Subspace<S> preimage(const Matrix<S>& f, const Subspace<S>& s) {
  if (f.rows() != s.ambient_dim()) throw DimensionError("preimage: shape mismatch");
  // x with f x in s  <=>  [f | -B^T](x; y) = 0
  Matrix<S> stacked(f.rows(), f.cols() + s.dim());
  stacked << f, -s.basis().transpose();
  auto ker = kernel_basis(stacked);
  return Subspace<S>::span_rows(ker.basis().leftCols(f.cols()));
}

// ---------------------------------------------------------------------------
// Quotients and one-sided inverses

template <class S>
struct QuotientSpace {
  Index ambient = 0;
  Subspace<S> relations;
  Matrix<S> projection;  // (n-k) × n
  Matrix<S> section;     // n × (n-k)
  std::vector<Index> free_columns;

  Index dim() const { return projection.rows(); }
  Vector<S> project(const Vector<S>& v) const { return projection * v; }
};

/// Quotient basis indexed by the non-pivot coordinates of s, in order.
template <class S>
QuotientSpace<S> quotient_space(Index n, const Subspace<S>& s) {
  if (s.ambient_dim() != n) throw DimensionError("quotient_space: ambient dimension mismatch");
  QuotientSpace<S> q;
  q.ambient = n;
  q.relations = s;
  std::vector<Index> position(static_cast<std::size_t>(n), -1);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : s.pivots()) is_pivot[p] = true;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[c]) {
      position[c] = static_cast<Index>(q.free_columns.size());
      q.free_columns.push_back(c);
    }
  const Index qd = static_cast<Index>(q.free_columns.size());
  q.projection = Matrix<S>::Zero(qd, n);
  q.section = Matrix<S>::Zero(n, qd);
  for (Index a = 0; a < qd; ++a) {
    q.projection(a, q.free_columns[a]) = S(1);
    q.section(q.free_columns[a], a) = S(1);
  }
  for (Index k = 0; k < s.dim(); ++k)
    for (Index a = 0; a < qd; ++a) q.projection(a, s.pivots()[k]) = -s.basis()(k, q.free_columns[a]);
  return q;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  Matrix<S> aug(n, 2 * n);
  aug << m, Matrix<S>::Identity(n, n);
  auto r = rref(aug);
  if (r.rank() < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  return Matrix<S>(r.rows.rightCols(n));
}

enum class PivotOrder { leftmost, rightmost };

/// Right inverse of a surjective map f (rows <= cols): f * s = I, with s
/// supported on the pivot columns chosen in the given order.
template <class S>
std::optional<Matrix<S>> right_inverse(const Matrix<S>& f, PivotOrder order = PivotOrder::leftmost) {
  const Index r = f.rows(), c = f.cols();
  std::vector<Index> cols;
  if (order == PivotOrder::leftmost) {
    cols = rref(f).pivots;
  } else {
    Matrix<S> reversed = f.rowwise().reverse();
    for (Index p : rref(reversed).pivots) cols.push_back(c - 1 - p);
    std::sort(cols.begin(), cols.end());
  }
  if (static_cast<Index>(cols.size()) != r) return std::nullopt;
  Matrix<S> sub(r, r);
  for (Index k = 0; k < r; ++k) sub.col(k) = f.col(cols[k]);
  auto inv = inverse(sub);
  if (!inv) return std::nullopt;
  Matrix<S> s = Matrix<S>::Zero(c, r);
  for (Index k = 0; k < r; ++k) s.row(cols[k]) = inv->row(k);
  return s;
}

/// Left inverse of an injective map i (rows >= cols): l * i = I.
template <class S>
std::optional<Matrix<S>> left_inverse(const Matrix<S>& i) {
  Matrix<S> t = i.transpose();
  auto r = right_inverse(t);
  if (!r) return std::nullopt;
  return Matrix<S>(r->transpose());
}

// ---------------------------------------------------------------------------
// Sparse incremental echelon basis

/// Fully reduced echelon basis grown one sparse vector at a time. The rows
/// are canonical RREF at every step, so the final span is insertion-order
/// independent.
template <class S>
class EchelonBuilder {
 public:
  explicit EchelonBuilder(Index ambient) : ambient_(ambient) {}

  Index ambient_dim() const { return ambient_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  bool is_pivot(Index c) const { return rows_.count(c) != 0; }

  SparseVec<S> reduce(const SparseVec<S>& v) const {
    SparseVec<S> out = v;
    for (const auto& [c, x] : v) {
      auto it = rows_.find(c);
      if (it != rows_.end()) out = axpy(out, S(-x), it->second);
    }
    return out;
  }

  bool contains(const SparseVec<S>& v) const { return reduce(v).empty(); }

  /// Returns true when v was outside the current span.
  bool insert(const SparseVec<S>& v) {
    SparseVec<S> r = reduce(v);
    if (r.empty()) return false;
    const Index p = r.front().first;
    S inv = S(1) / r.front().second;
    for (auto& e : r) e.second *= inv;
    for (auto& [pc, row] : rows_) {
      auto it = std::lower_bound(row.begin(), row.end(), p,
                                 [](const std::pair<Index, S>& e, Index c) { return e.first < c; });
      if (it != row.end() && it->first == p) {
        S f = it->second;
        row = axpy(row, S(-f), r);
      }
    }
    rows_.emplace(p, std::move(r));
    return true;
  }

  std::vector<Index> pivots() const {
    std::vector<Index> out;
    for (const auto& kv : rows_) out.push_back(kv.first);
    return out;
  }

  std::vector<SparseVec<S>> rows() const {
    std::vector<SparseVec<S>> out;
    for (const auto& kv : rows_) out.push_back(kv.second);
    return out;
  }

  Subspace<S> subspace() const {
    Matrix<S> m = Matrix<S>::Zero(rank(), ambient_);
    Index k = 0;
    for (const auto& kv : rows_) {
      for (const auto& [c, x] : kv.second) m(k, c) = x;
      ++k;
    }
    return Subspace<S>::from_rref(ambient_, std::move(m), pivots());
  }

  /// Null space of the row set inserted so far, one sparse vector per free column.
  std::vector<SparseVec<S>> kernel() const {
    std::vector<SparseVec<S>> out;
    std::vector<std::vector<std::pair<Index, S>>> by_column(static_cast<std::size_t>(ambient_));
    for (const auto& [p, row] : rows_)
      for (const auto& [c, x] : row)
        if (c != p) by_column[c].emplace_back(p, x);
    for (Index f = 0; f < ambient_; ++f) {
      if (is_pivot(f)) continue;
      SparseVec<S> v;
      for (const auto& [p, x] : by_column[f]) v.emplace_back(p, -x);
      v.emplace_back(f, S(1));
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  Index ambient_;
  std::map<Index, SparseVec<S>> rows_;
};

/// Quotient of K^n by the span held in an EchelonBuilder, on sparse vectors.
template <class S>
class SparseQuotient {
 public:
  SparseQuotient() = default;
  explicit SparseQuotient(EchelonBuilder<S> relations)
      : relations_(std::move(relations)), position_(static_cast<std::size_t>(relations_.ambient_dim()), -1) {
    for (Index c = 0; c < relations_.ambient_dim(); ++c)
      if (!relations_.is_pivot(c)) {
        position_[c] = static_cast<Index>(free_.size());
        free_.push_back(c);
      }
  }

  Index ambient_dim() const { return relations_.ambient_dim(); }
  Index dim() const { return static_cast<Index>(free_.size()); }
  const std::vector<Index>& free_columns() const { return free_; }
  const EchelonBuilder<S>& relations() const { return relations_; }

  SparseVec<S> project(const SparseVec<S>& v) const {
    SparseVec<S> r = relations_.reduce(v);
    for (auto& e : r) e.first = position_[e.first];
    return r;
  }

  Vector<S> project_dense(const SparseVec<S>& v) const { return to_dense(project(v), dim()); }

  /// Generator (ambient index) standing for quotient basis vector a.
  Index lift(Index a) const { return free_[a]; }

  QuotientSpace<S> dense() const {
    auto sub = relations_.subspace();
    return quotient_space(ambient_dim(), sub);
  }

 private:
  EchelonBuilder<S> relations_{0};
  std::vector<Index> position_;
  std::vector<Index> free_;
};

/// Column-sparse matrix for maps too large to hold densely.
template <class S>
struct SparseMatrix {
  Index rows = 0, cols = 0;
  std::vector<SparseVec<S>> columns;

  SparseMatrix() = default;
  SparseMatrix(Index r, Index c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

  SparseVec<S> apply(const SparseVec<S>& v) const {
    SparseAccumulator<S> acc(rows);
    for (const auto& [c, x] : v) acc.add(columns[c], x);
    return acc.take();
  }

  /// this * other, column by column.
  SparseMatrix operator*(const SparseMatrix& other) const {
    if (cols != other.rows) throw DimensionError("SparseMatrix: shape mismatch in product");
    SparseMatrix out(rows, other.cols);
    SparseAccumulator<S> acc(rows);
    for (Index j = 0; j < other.cols; ++j) {
      for (const auto& [c, x] : other.columns[j]) acc.add(columns[c], x);
      out.columns[j] = acc.take();
    }
    return out;
  }

  bool is_zero() const {
    for (const auto& c : columns)
      if (!c.empty()) return false;
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }

  Matrix<S> dense() const {
    Matrix<S> m = Matrix<S>::Zero(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (const auto& [i, x] : columns[j]) m(i, j) = x;
    return m;
  }

  static SparseMatrix from_dense(const Matrix<S>& m) {
    SparseMatrix out(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) out.columns[j] = to_sparse(Vector<S>(m.col(j)));
    return out;
  }

  /// Rows as sparse vectors over the column index.
  std::vector<SparseVec<S>> row_vectors() const {
    std::vector<SparseVec<S>> out(static_cast<std::size_t>(rows));
    for (Index j = 0; j < cols; ++j)
      for (const auto& [i, x] : columns[j]) out[i].emplace_back(j, x);
    return out;
  }
};

/// Echelon basis of the column span.
template <class S>
EchelonBuilder<S> column_span(const SparseMatrix<S>& m) {
  EchelonBuilder<S> b(m.rows);
  for (const auto& c : m.columns)
    if (!c.empty()) b.insert(c);
  return b;
}

/// Null space, one sparse vector per free column of the row echelon form.
template <class S>
std::vector<SparseVec<S>> sparse_kernel(const SparseMatrix<S>& m) {
  EchelonBuilder<S> b(m.cols);
  for (const auto& r : m.row_vectors())
    if (!r.empty()) b.insert(r);
  return b.kernel();
}

}  // namespace awb
