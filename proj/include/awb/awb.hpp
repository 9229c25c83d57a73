#pragma once

// Finite-dimensional algebras with bracket given by structure constants:
// an associative product and a bracket with [ab,c] = [a,c]b + a[b,c].

#include <string>
#include <vector>

#include "awb/bilinear.hpp"
#include "awb/errors.hpp"
#include "awb/linalg.hpp"
#include "awb/scalar.hpp"

namespace awb {

struct Witness {
  std::string check;           // axiom or equation id
  std::vector<Index> indices;  // basis index tuple
  std::string lhs, rhs;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Outcome of an exhaustive check over basis tuples.
struct ValidationReport {
  std::vector<Witness> witnesses;
  std::size_t checks = 0;  // number of (equation, tuple) instances evaluated

  bool valid() const { return witnesses.empty(); }
  void merge(const ValidationReport& other);
  /// First few witnesses, one per line.
  std::string describe(std::size_t max_lines = 5) const;
};

template <class S>
std::string format_vector(const Vector<S>& v);

enum class Operation { product, bracket };
enum class Validation { enforce, skip };

class AxiomError : public VerificationFailure {
 public:
  AxiomError(const std::string& what, ValidationReport report)
      : VerificationFailure(what + "\n" + report.describe()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

template <class S>
class FiniteAwb {
 public:
  FiniteAwb() : FiniteAwb(default_field(), BilinearMap<S>(0, 0, 0), BilinearMap<S>(0, 0, 0)) {}

  /// Throws AxiomError unless validation is skipped explicitly.
  FiniteAwb(FieldSpec field, BilinearMap<S> product, BilinearMap<S> bracket, std::string name = {},
            Validation validation = Validation::enforce);

  /// All operations zero.
  static FiniteAwb abelian(FieldSpec field, Index dim, std::string name = {});

  const FieldSpec& field() const { return field_; }
  Index dim() const { return product_.out_dim(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const BilinearMap<S>& product() const { return product_; }
  const BilinearMap<S>& bracket() const { return bracket_; }
  const BilinearMap<S>& operation(Operation op) const { return op == Operation::product ? product_ : bracket_; }
  const SparseTable<S>& product_table() const { return product_table_; }
  const SparseTable<S>& bracket_table() const { return bracket_table_; }

  Vector<S> mul(const Vector<S>& x, const Vector<S>& y) const { return product_.apply(x, y); }
  Vector<S> br(const Vector<S>& x, const Vector<S>& y) const { return bracket_.apply(x, y); }
  Vector<S> evaluate(const Vector<S>& x, const Vector<S>& y, Operation op) const {
    return operation(op).apply(x, y);
  }

  S scalar(long long v) const { return ScalarTraits<S>::from_int(v, field_); }
  Vector<S> zero_vector() const;
  Vector<S> basis_vector(Index i) const;
  Matrix<S> identity_matrix() const;

  bool is_abelian() const { return product_.is_zero_map() && bracket_.is_zero_map(); }

  friend bool operator==(const FiniteAwb& a, const FiniteAwb& b) {
    return a.field_ == b.field_ && a.product_ == b.product_ && a.bracket_ == b.bracket_;
  }

 private:
  static FieldSpec default_field();

  FieldSpec field_;
  BilinearMap<S> product_, bracket_;
  SparseTable<S> product_table_, bracket_table_;
  std::string name_;
};

template <class S>
ValidationReport validate_awb(const FiniteAwb<S>& a);

/// Linear map between algebras, matrix is (target dim) x (source dim).
template <class S>
struct AwbMorphism {
  FiniteAwb<S> source;
  FiniteAwb<S> target;
  Matrix<S> matrix;

  Vector<S> operator()(const Vector<S>& x) const { return matrix * x; }
};

template <class S>
ValidationReport check_morphism(const AwbMorphism<S>& f);

template <class S>
AwbMorphism<S> identity_morphism(const FiniteAwb<S>& a);
template <class S>
AwbMorphism<S> zero_morphism(const FiniteAwb<S>& source, const FiniteAwb<S>& target);
/// g after f
template <class S>
AwbMorphism<S> compose(const AwbMorphism<S>& g, const AwbMorphism<S>& f);

template <class S>
Subspace<S> kernel(const AwbMorphism<S>& f) {
  return kernel_basis(f.matrix);
}
template <class S>
Subspace<S> image(const AwbMorphism<S>& f) {
  return image(f.matrix);
}
template <class S>
bool is_surjective(const AwbMorphism<S>& f) {
  return rank(f.matrix) == f.target.dim();
}
template <class S>
bool is_injective(const AwbMorphism<S>& f) {
  return rank(f.matrix) == f.source.dim();
}

// ---------------------------------------------------------------------------
// Constructors from associative algebras

template <class S>
struct AssociativeAlgebra {
  FieldSpec field;
  BilinearMap<S> product;
  std::string name;

  Index dim() const { return product.out_dim(); }
};

template <class S>
ValidationReport check_associative(const FieldSpec& field, const BilinearMap<S>& product);

/// Bracket [a,b] = ab - ba.
template <class S>
FiniteAwb<S> tautological(const AssociativeAlgebra<S>& a);
/// Bracket identically zero.
template <class S>
FiniteAwb<S> with_trivial_bracket(const AssociativeAlgebra<S>& a);

// ---------------------------------------------------------------------------
// Ideals, center, quotients

template <class S>
Subspace<S> ideal_closure(const FiniteAwb<S>& a, const std::vector<Vector<S>>& seeds);
template <class S>
Subspace<S> ideal_closure(const FiniteAwb<S>& a, const Subspace<S>& seed);

template <class S>
bool is_ideal(const FiniteAwb<S>& a, const Subspace<S>& s);
template <class S>
bool is_subalgebra(const FiniteAwb<S>& a, const Subspace<S>& s);

/// [[B,C]]: ideal generated by bc, cb, [b,c], [c,b]. Both inputs must be ideals.
template <class S>
Subspace<S> commutator_ideal(const FiniteAwb<S>& a, const Subspace<S>& b, const Subspace<S>& c);

template <class S>
Subspace<S> derived_algebra(const FiniteAwb<S>& a);
template <class S>
bool is_perfect(const FiniteAwb<S>& a);

/// Span of all ab and [a,b] over basis pairs.
template <class S>
Subspace<S> operation_span(const FiniteAwb<S>& a);

template <class S>
Subspace<S> center(const FiniteAwb<S>& a);

template <class S>
struct QuotientAwb {
  FiniteAwb<S> algebra;
  AwbMorphism<S> projection;
  QuotientSpace<S> space;
};

template <class S>
QuotientAwb<S> quotient_awb(const FiniteAwb<S>& a, const Subspace<S>& ideal);
template <class S>
QuotientAwb<S> abelianization(const FiniteAwb<S>& a);
template <class S>
QuotientAwb<S> associativization(const FiniteAwb<S>& a);
template <class S>
QuotientAwb<S> poisson_quotient(const FiniteAwb<S>& a);

/// Seeds of the Poisson ideal: polarized squares and Jacobiators.
template <class S>
std::vector<Vector<S>> poisson_relations(const FiniteAwb<S>& a);

template <class S>
struct DirectSum {
  FiniteAwb<S> algebra;
  AwbMorphism<S> inject_first, inject_second;
  AwbMorphism<S> project_first, project_second;
};

template <class S>
DirectSum<S> direct_sum(const FiniteAwb<S>& a, const FiniteAwb<S>& b);

/// A subalgebra (or ideal) materialized on the canonical basis of its subspace.
template <class S>
struct Subalgebra {
  FiniteAwb<S> algebra;
  AwbMorphism<S> inclusion;
  Subspace<S> subspace;
};

template <class S>
Subalgebra<S> subalgebra(const FiniteAwb<S>& a, const Subspace<S>& s, std::string name = {});

}  // namespace awb
