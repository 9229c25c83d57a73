#pragma once

// Bilinear maps K^l x K^r -> K^o stored as dense structure constants.
// Products, brackets and the four action maps are all values of this type.

#include <vector>

#include "awb/linalg.hpp"

namespace awb {

template <class S>
class BilinearMap {
 public:
  BilinearMap() = default;
  BilinearMap(Index left, Index right, Index out)
      : left_(left), right_(right), out_(out), data_(static_cast<std::size_t>(left * right * out), S(0)) {}

  Index left_dim() const { return left_; }
  Index right_dim() const { return right_; }
  Index out_dim() const { return out_; }

  /// Coefficient of e_k in op(e_i, e_j).
  const S& operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }
  S& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }

  Vector<S> on_basis(Index i, Index j) const {
    Vector<S> v(out_);
    for (Index k = 0; k < out_; ++k) v(k) = (*this)(i, j, k);
    return v;
  }

  void set_on_basis(Index i, Index j, const Vector<S>& v) {
    if (v.size() != out_) throw DimensionError("BilinearMap::set_on_basis: length mismatch");
    for (Index k = 0; k < out_; ++k) (*this)(i, j, k) = v(k);
  }

  Vector<S> apply(const Vector<S>& x, const Vector<S>& y) const {
    if (x.size() != left_ || y.size() != right_) throw DimensionError("BilinearMap::apply: dimension mismatch");
    Vector<S> out = Vector<S>::Zero(out_);
    for (Index i = 0; i < left_; ++i) {
      if (is_zero(x(i))) continue;
      for (Index j = 0; j < right_; ++j) {
        if (is_zero(y(j))) continue;
        S c = x(i) * y(j);
        for (Index k = 0; k < out_; ++k) {
          const S& t = (*this)(i, j, k);
          if (!is_zero(t)) out(k) += c * t;
        }
      }
    }
    return out;
  }

  /// Matrix of y -> op(x, y).
  Matrix<S> left_operator(const Vector<S>& x) const {
    Matrix<S> m(out_, right_);
    for (Index j = 0; j < right_; ++j) m.col(j) = apply(x, unit_vector<S>(right_, j));
    return m;
  }

  /// Matrix of x -> op(x, y).
  Matrix<S> right_operator(const Vector<S>& y) const {
    Matrix<S> m(out_, left_);
    for (Index i = 0; i < left_; ++i) m.col(i) = apply(unit_vector<S>(left_, i), y);
    return m;
  }

  bool is_zero_map() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  /// (x, y) -> out * op(l x, r y), with l, r, out given as matrices.
  BilinearMap transformed(const Matrix<S>& l, const Matrix<S>& r, const Matrix<S>& out) const {
    if (l.rows() != left_ || r.rows() != right_ || out.cols() != out_)
      throw DimensionError("BilinearMap::transformed: shape mismatch");
    BilinearMap res(l.cols(), r.cols(), out.rows());
    for (Index i = 0; i < l.cols(); ++i) {
      Vector<S> x = l.col(i);
      for (Index j = 0; j < r.cols(); ++j) res.set_on_basis(i, j, out * apply(x, r.col(j)));
    }
    return res;
  }

  friend bool operator==(const BilinearMap& a, const BilinearMap& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.out_ == b.out_ && a.data_ == b.data_;
  }
  friend bool operator!=(const BilinearMap& a, const BilinearMap& b) { return !(a == b); }

 private:
  std::size_t offset(Index i, Index j, Index k) const {
    return static_cast<std::size_t>((i * right_ + j) * out_ + k);
  }

  Index left_ = 0, right_ = 0, out_ = 0;
  std::vector<S> data_;
};

/// Sparse basis-pair table of a bilinear map, for fast evaluation on sparse
/// arguments.
template <class S>
class SparseTable {
 public:
  SparseTable() = default;
  explicit SparseTable(const BilinearMap<S>& m)
      : left_(m.left_dim()), right_(m.right_dim()), out_(m.out_dim()),
        entries_(static_cast<std::size_t>(left_ * right_)) {
    for (Index i = 0; i < left_; ++i)
      for (Index j = 0; j < right_; ++j) {
        auto& e = entries_[static_cast<std::size_t>(i * right_ + j)];
        for (Index k = 0; k < out_; ++k)
          if (!awb::is_zero(m(i, j, k))) e.emplace_back(k, m(i, j, k));
      }
  }

  Index left_dim() const { return left_; }
  Index right_dim() const { return right_; }
  Index out_dim() const { return out_; }

  bool is_zero_map() const {
    for (const auto& e : entries_)
      if (!e.empty()) return false;
    return true;
  }

  const SparseVec<S>& on_basis(Index i, Index j) const {
    return entries_[static_cast<std::size_t>(i * right_ + j)];
  }

  SparseVec<S> apply(const SparseVec<S>& x, const SparseVec<S>& y) const {
    if (x.empty() || y.empty()) return {};
    if (x.size() == 1 && y.size() == 1) return scaled(on_basis(x[0].first, y[0].first), S(x[0].second * y[0].second));
    SparseAccumulator<S> acc(out_);
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) acc.add(on_basis(i, j), a * b);
    return acc.take();
  }

 private:
  Index left_ = 0, right_ = 0, out_ = 0;
  std::vector<SparseVec<S>> entries_;
};

}  // namespace awb
