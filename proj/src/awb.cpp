#include "awb/awb.hpp"

#include <sstream>

namespace awb {

void ValidationReport::merge(const ValidationReport& other) {
  witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
  checks += other.checks;
}

std::string ValidationReport::describe(std::size_t max_lines) const {
  std::ostringstream os;
  if (valid()) {
    os << "valid (" << checks << " checks)";
    return os.str();
  }
  os << witnesses.size() << " violation(s) in " << checks << " checks";
  for (std::size_t k = 0; k < witnesses.size() && k < max_lines; ++k) {
    const auto& w = witnesses[k];
    os << "\n  " << w.check << " at (";
    for (std::size_t i = 0; i < w.indices.size(); ++i) os << (i ? "," : "") << w.indices[i];
    os << "): " << w.lhs << " != " << w.rhs;
  }
  if (witnesses.size() > max_lines) os << "\n  ...";
  return os.str();
}

template <class S>
std::string format_vector(const Vector<S>& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v(i));
  }
  return out + "]";
}

namespace {

template <class S>
void compare(ValidationReport& r, const char* check, std::vector<Index> idx, const Vector<S>& lhs,
             const Vector<S>& rhs) {
  ++r.checks;
  if (!exact_equal(lhs, rhs)) r.witnesses.push_back({check, std::move(idx), format_vector(lhs), format_vector(rhs)});
}

template <class S>
void require_shape(const BilinearMap<S>& m, Index n, const char* what) {
  if (m.left_dim() != n || m.right_dim() != n || m.out_dim() != n)
    throw InputError(std::string(what) + " tensor is not n x n x n");
}

}  // namespace

template <class S>
FieldSpec FiniteAwb<S>::default_field() {
  if constexpr (std::is_same_v<S, ModP>)
    return FieldSpec::prime(2);
  else
    return FieldSpec::rationals();
}

template <class S>
FiniteAwb<S>::FiniteAwb(FieldSpec field, BilinearMap<S> product, BilinearMap<S> bracket, std::string name,
                        Validation validation)
    : field_(field), product_(std::move(product)), bracket_(std::move(bracket)), name_(std::move(name)) {
  if (!ScalarTraits<S>::supports(field_)) throw InputError("field " + field_.to_string() + " does not match scalar type");
  require_shape(product_, product_.out_dim(), "product");
  require_shape(bracket_, product_.out_dim(), "bracket");
  product_table_ = SparseTable<S>(product_);
  bracket_table_ = SparseTable<S>(bracket_);
  if (validation == Validation::enforce) {
    auto report = validate_awb(*this);
    if (!report.valid())
      throw AxiomError("algebra \"" + name_ + "\" violates the algebra-with-bracket axioms", report);
  }
}

template <class S>
FiniteAwb<S> FiniteAwb<S>::abelian(FieldSpec field, Index dim, std::string name) {
  return FiniteAwb(field, BilinearMap<S>(dim, dim, dim), BilinearMap<S>(dim, dim, dim), std::move(name),
                   Validation::skip);
}

template <class S>
Vector<S> FiniteAwb<S>::zero_vector() const {
  Vector<S> v(dim());
  for (Index i = 0; i < dim(); ++i) v(i) = scalar(0);
  return v;
}

template <class S>
Vector<S> FiniteAwb<S>::basis_vector(Index i) const {
  Vector<S> v = zero_vector();
  v(i) = scalar(1);
  return v;
}

template <class S>
Matrix<S> FiniteAwb<S>::identity_matrix() const {
  Matrix<S> m(dim(), dim());
  for (Index j = 0; j < dim(); ++j) m.col(j) = basis_vector(j);
  return m;
}

template <class S>
ValidationReport validate_awb(const FiniteAwb<S>& a) {
  ValidationReport r;
  const Index n = a.dim();
  const auto& p = a.product();
  const auto& b = a.bracket();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Vector<S> ij = p.on_basis(i, j);
      for (Index k = 0; k < n; ++k) {
        Vector<S> ek = a.basis_vector(k);
        compare(r, "associativity", {i, j, k}, p.apply(ij, ek), p.apply(a.basis_vector(i), p.on_basis(j, k)));
        // [e_i e_j, e_k] = [e_i, e_k] e_j + e_i [e_j, e_k]
        Vector<S> lhs = b.apply(ij, ek);
        Vector<S> rhs = p.apply(b.on_basis(i, k), a.basis_vector(j)) + p.apply(a.basis_vector(i), b.on_basis(j, k));
        compare(r, "bracket_identity", {i, j, k}, lhs, rhs);
      }
    }
  return r;
}

template <class S>
ValidationReport check_morphism(const AwbMorphism<S>& f) {
  ValidationReport r;
  const Index n = f.source.dim();
  if (f.matrix.rows() != f.target.dim() || f.matrix.cols() != n)
    throw DimensionError("check_morphism: matrix shape does not match source/target");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Vector<S> fi = f.matrix.col(i), fj = f.matrix.col(j);
      compare(r, "preserves_product", {i, j}, Vector<S>(f.matrix * f.source.product().on_basis(i, j)),
              f.target.mul(fi, fj));
      compare(r, "preserves_bracket", {i, j}, Vector<S>(f.matrix * f.source.bracket().on_basis(i, j)),
              f.target.br(fi, fj));
    }
  return r;
}

template <class S>
AwbMorphism<S> identity_morphism(const FiniteAwb<S>& a) {
  return {a, a, a.identity_matrix()};
}

template <class S>
AwbMorphism<S> zero_morphism(const FiniteAwb<S>& source, const FiniteAwb<S>& target) {
  Matrix<S> m(target.dim(), source.dim());
  for (Index j = 0; j < source.dim(); ++j) m.col(j) = target.zero_vector();
  return {source, target, m};
}

template <class S>
AwbMorphism<S> compose(const AwbMorphism<S>& g, const AwbMorphism<S>& f) {
  if (g.matrix.cols() != f.matrix.rows()) throw DimensionError("compose: shape mismatch");
  return {f.source, g.target, g.matrix * f.matrix};
}

template <class S>
ValidationReport check_associative(const FieldSpec& field, const BilinearMap<S>& p) {
  ValidationReport r;
  const Index n = p.out_dim();
  require_shape(p, n, "product");
  auto e = [&](Index i) {
    Vector<S> v = Vector<S>::Zero(n);
    v(i) = ScalarTraits<S>::from_int(1, field);
    return v;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        compare(r, "associativity", {i, j, k}, p.apply(p.on_basis(i, j), e(k)), p.apply(e(i), p.on_basis(j, k)));
  return r;
}

namespace {

template <class S>
void require_associative(const AssociativeAlgebra<S>& a) {
  auto r = check_associative(a.field, a.product);
  if (!r.valid()) throw PreconditionError("product of \"" + a.name + "\" is not associative\n" + r.describe());
}

}  // namespace

template <class S>
FiniteAwb<S> tautological(const AssociativeAlgebra<S>& a) {
  require_associative(a);
  const Index n = a.dim();
  BilinearMap<S> br(n, n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) br(i, j, k) = a.product(i, j, k) - a.product(j, i, k);
  return FiniteAwb<S>(a.field, a.product, br, a.name.empty() ? std::string() : "T(" + a.name + ")");
}

template <class S>
FiniteAwb<S> with_trivial_bracket(const AssociativeAlgebra<S>& a) {
  require_associative(a);
  const Index n = a.dim();
  return FiniteAwb<S>(a.field, a.product, BilinearMap<S>(n, n, n), a.name);
}

namespace {

/// The four one-step images of x: xe_j, e_j x, [x,e_j], [e_j,x] for all j.
template <class S>
void push_neighbours(const FiniteAwb<S>& a, const Vector<S>& x, std::vector<Vector<S>>& out) {
  for (Index j = 0; j < a.dim(); ++j) {
    Vector<S> e = a.basis_vector(j);
    out.push_back(a.mul(x, e));
    out.push_back(a.mul(e, x));
    out.push_back(a.br(x, e));
    out.push_back(a.br(e, x));
  }
}

template <class S>
std::vector<Vector<S>> basis_list(const Subspace<S>& s) {
  std::vector<Vector<S>> v;
  for (Index k = 0; k < s.dim(); ++k) v.push_back(s.basis_vector(k));
  return v;
}

}  // namespace

template <class S>
Subspace<S> ideal_closure(const FiniteAwb<S>& a, const std::vector<Vector<S>>& seeds) {
  Subspace<S> current = Subspace<S>::span(a.dim(), seeds);
  while (true) {
    std::vector<Vector<S>> gens = basis_list(current);
    for (Index k = 0; k < current.dim(); ++k) push_neighbours(a, current.basis_vector(k), gens);
    Subspace<S> next = Subspace<S>::span(a.dim(), gens);
    if (next.dim() == current.dim()) return current;
    current = std::move(next);
  }
}

template <class S>
Subspace<S> ideal_closure(const FiniteAwb<S>& a, const Subspace<S>& seed) {
  return ideal_closure(a, basis_list(seed));
}

template <class S>
bool is_ideal(const FiniteAwb<S>& a, const Subspace<S>& s) {
  if (s.ambient_dim() != a.dim()) throw DimensionError("is_ideal: ambient dimension mismatch");
  std::vector<Vector<S>> out;
  for (Index k = 0; k < s.dim(); ++k) push_neighbours(a, s.basis_vector(k), out);
  for (const auto& v : out)
    if (!s.contains(v)) return false;
  return true;
}

template <class S>
bool is_subalgebra(const FiniteAwb<S>& a, const Subspace<S>& s) {
  if (s.ambient_dim() != a.dim()) throw DimensionError("is_subalgebra: ambient dimension mismatch");
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = 0; j < s.dim(); ++j) {
      Vector<S> x = s.basis_vector(i), y = s.basis_vector(j);
      if (!s.contains(a.mul(x, y)) || !s.contains(a.br(x, y))) return false;
    }
  return true;
}

template <class S>
Subspace<S> commutator_ideal(const FiniteAwb<S>& a, const Subspace<S>& b, const Subspace<S>& c) {
  if (!is_ideal(a, b) || !is_ideal(a, c)) throw PreconditionError("commutator_ideal: arguments must be two-sided ideals");
  std::vector<Vector<S>> seeds;
  for (Index i = 0; i < b.dim(); ++i)
    for (Index j = 0; j < c.dim(); ++j) {
      Vector<S> x = b.basis_vector(i), y = c.basis_vector(j);
      seeds.push_back(a.mul(x, y));
      seeds.push_back(a.mul(y, x));
      seeds.push_back(a.br(x, y));
      seeds.push_back(a.br(y, x));
    }
  return ideal_closure(a, seeds);
}

template <class S>
Subspace<S> operation_span(const FiniteAwb<S>& a) {
  std::vector<Vector<S>> v;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j) {
      v.push_back(a.product().on_basis(i, j));
      v.push_back(a.bracket().on_basis(i, j));
    }
  return Subspace<S>::span(a.dim(), v);
}

template <class S>
Subspace<S> derived_algebra(const FiniteAwb<S>& a) {
  auto full = Subspace<S>::span_rows(a.identity_matrix());
  return commutator_ideal(a, full, full);
}

template <class S>
bool is_perfect(const FiniteAwb<S>& a) {
  return derived_algebra(a).dim() == a.dim();
}

template <class S>
Subspace<S> center(const FiniteAwb<S>& a) {
  const Index n = a.dim();
  Matrix<S> stacked(4 * n * n, n);
  for (Index j = 0; j < n; ++j) {
    Vector<S> e = a.basis_vector(j);
    stacked.block(4 * j * n, 0, n, n) = a.product().right_operator(e);
    stacked.block((4 * j + 1) * n, 0, n, n) = a.product().left_operator(e);
    stacked.block((4 * j + 2) * n, 0, n, n) = a.bracket().right_operator(e);
    stacked.block((4 * j + 3) * n, 0, n, n) = a.bracket().left_operator(e);
  }
  if (n == 0) return Subspace<S>::zero(0);
  return kernel_basis(stacked);
}

template <class S>
QuotientAwb<S> quotient_awb(const FiniteAwb<S>& a, const Subspace<S>& ideal) {
  if (!is_ideal(a, ideal)) throw PreconditionError("quotient_awb: subspace is not a two-sided ideal");
  auto q = quotient_space(a.dim(), ideal);
  FiniteAwb<S> quo(a.field(), a.product().transformed(q.section, q.section, q.projection),
                   a.bracket().transformed(q.section, q.section, q.projection),
                   a.name().empty() ? std::string() : a.name() + "/I", Validation::skip);
  AwbMorphism<S> proj{a, quo, q.projection};
  return {quo, proj, q};
}

template <class S>
QuotientAwb<S> abelianization(const FiniteAwb<S>& a) {
  auto r = quotient_awb(a, derived_algebra(a));
  if (!a.name().empty()) r.algebra.set_name(a.name() + "^ab");
  r.projection.target = r.algebra;
  return r;
}

template <class S>
QuotientAwb<S> associativization(const FiniteAwb<S>& a) {
  std::vector<Vector<S>> seeds;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j) seeds.push_back(a.bracket().on_basis(i, j));
  auto r = quotient_awb(a, ideal_closure(a, seeds));
  if (!a.name().empty()) r.algebra.set_name(a.name() + "^as");
  r.projection.target = r.algebra;
  return r;
}

template <class S>
std::vector<Vector<S>> poisson_relations(const FiniteAwb<S>& a) {
  const Index n = a.dim();
  const auto& b = a.bracket();
  std::vector<Vector<S>> seeds;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) seeds.push_back(b.on_basis(i, j) + b.on_basis(j, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        Vector<S> ei = a.basis_vector(i), ej = a.basis_vector(j), ek = a.basis_vector(k);
        seeds.push_back(b.apply(ei, b.on_basis(j, k)) + b.apply(ej, b.on_basis(k, i)) + b.apply(ek, b.on_basis(i, j)));
      }
  return seeds;
}

template <class S>
QuotientAwb<S> poisson_quotient(const FiniteAwb<S>& a) {
  auto r = quotient_awb(a, ideal_closure(a, poisson_relations(a)));
  if (!a.name().empty()) r.algebra.set_name(a.name() + "^Poisson");
  r.projection.target = r.algebra;
  return r;
}

template <class S>
DirectSum<S> direct_sum(const FiniteAwb<S>& a, const FiniteAwb<S>& b) {
  if (!(a.field() == b.field())) throw InputError("direct_sum: field mismatch");
  const Index p = a.dim(), q = b.dim(), n = p + q;
  BilinearMap<S> prod(n, n, n), br(n, n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        prod(i, j, k) = a.scalar(0);
        br(i, j, k) = a.scalar(0);
      }
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j)
      for (Index k = 0; k < p; ++k) {
        prod(i, j, k) = a.product()(i, j, k);
        br(i, j, k) = a.bracket()(i, j, k);
      }
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j)
      for (Index k = 0; k < q; ++k) {
        prod(p + i, p + j, p + k) = b.product()(i, j, k);
        br(p + i, p + j, p + k) = b.bracket()(i, j, k);
      }
  std::string name = a.name().empty() || b.name().empty() ? std::string() : a.name() + "+" + b.name();
  FiniteAwb<S> sum(a.field(), prod, br, name, Validation::skip);
  Matrix<S> id = sum.identity_matrix();
  Matrix<S> i1 = id.leftCols(p), i2 = id.rightCols(q);
  Matrix<S> p1 = id.topRows(p), p2 = id.bottomRows(q);
  return {sum, {a, sum, i1}, {b, sum, i2}, {sum, a, p1}, {sum, b, p2}};
}

template <class S>
Subalgebra<S> subalgebra(const FiniteAwb<S>& a, const Subspace<S>& s, std::string name) {
  if (!is_subalgebra(a, s)) throw PreconditionError("subalgebra: subspace is not closed under the operations");
  Matrix<S> incl = s.basis_columns();
  // coordinates in the canonical basis are the pivot entries
  Matrix<S> coords = Matrix<S>::Zero(s.dim(), a.dim());
  for (Index k = 0; k < s.dim(); ++k) coords(k, s.pivots()[k]) = a.scalar(1);
  FiniteAwb<S> sub(a.field(), a.product().transformed(incl, incl, coords), a.bracket().transformed(incl, incl, coords),
                   std::move(name), Validation::skip);
  return {sub, {sub, a, incl}, s};
}

#define AWB_INSTANTIATE(S)                                                                             \
  template std::string format_vector<S>(const Vector<S>&);                                             \
  template class FiniteAwb<S>;                                                                         \
  template ValidationReport validate_awb<S>(const FiniteAwb<S>&);                                      \
  template ValidationReport check_morphism<S>(const AwbMorphism<S>&);                                  \
  template AwbMorphism<S> identity_morphism<S>(const FiniteAwb<S>&);                                   \
  template AwbMorphism<S> zero_morphism<S>(const FiniteAwb<S>&, const FiniteAwb<S>&);                  \
  template AwbMorphism<S> compose<S>(const AwbMorphism<S>&, const AwbMorphism<S>&);                    \
  template ValidationReport check_associative<S>(const FieldSpec&, const BilinearMap<S>&);             \
  template FiniteAwb<S> tautological<S>(const AssociativeAlgebra<S>&);                                 \
  template FiniteAwb<S> with_trivial_bracket<S>(const AssociativeAlgebra<S>&);                         \
  template Subspace<S> ideal_closure<S>(const FiniteAwb<S>&, const std::vector<Vector<S>>&);           \
  template Subspace<S> ideal_closure<S>(const FiniteAwb<S>&, const Subspace<S>&);                      \
  template bool is_ideal<S>(const FiniteAwb<S>&, const Subspace<S>&);                                  \
  template bool is_subalgebra<S>(const FiniteAwb<S>&, const Subspace<S>&);                             \
  template Subspace<S> commutator_ideal<S>(const FiniteAwb<S>&, const Subspace<S>&, const Subspace<S>&); \
  template Subspace<S> operation_span<S>(const FiniteAwb<S>&);                                         \
  template Subspace<S> derived_algebra<S>(const FiniteAwb<S>&);                                        \
  template bool is_perfect<S>(const FiniteAwb<S>&);                                                    \
  template Subspace<S> center<S>(const FiniteAwb<S>&);                                                 \
  template QuotientAwb<S> quotient_awb<S>(const FiniteAwb<S>&, const Subspace<S>&);                    \
  template QuotientAwb<S> abelianization<S>(const FiniteAwb<S>&);                                      \
  template QuotientAwb<S> associativization<S>(const FiniteAwb<S>&);                                   \
  template QuotientAwb<S> poisson_quotient<S>(const FiniteAwb<S>&);                                    \
  template std::vector<Vector<S>> poisson_relations<S>(const FiniteAwb<S>&);                           \
  template DirectSum<S> direct_sum<S>(const FiniteAwb<S>&, const FiniteAwb<S>&);                       \
  template Subalgebra<S> subalgebra<S>(const FiniteAwb<S>&, const Subspace<S>&, std::string);

AWB_INSTANTIATE(Rational)
AWB_INSTANTIATE(ModP)

}  // namespace awb
