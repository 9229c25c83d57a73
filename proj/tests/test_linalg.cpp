#include "doctest.h"

#include "awb/linalg.hpp"

using namespace awb;

namespace {

template <class S>
Matrix<S> mat(Index r, Index c, std::initializer_list<long long> xs, std::uint32_t p = 0) {
  Matrix<S> m(r, c);
  auto it = xs.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) {
      if constexpr (std::is_same_v<S, ModP>)
        m(i, j) = ModP(*it++, p);
      else
        m(i, j) = S(*it++);
    }
  return m;
}

}  // namespace

TEST_CASE("rref on small inputs") {
  auto z = rref(Matrix<Rational>(Matrix<Rational>::Zero(2, 2)));
  CHECK(z.rank() == 0);
  CHECK(z.rows.rows() == 0);

  auto id = rref(Matrix<Rational>(Matrix<Rational>::Identity(3, 3)));
  CHECK(id.pivots == std::vector<Index>{0, 1, 2});

  auto r = rref(mat<Rational>(2, 2, {2, 4, 1, 2}));
  REQUIRE(r.rank() == 1);
  CHECK(r.pivots == std::vector<Index>{0});
  CHECK(r.rows(0, 0) == 1);
  CHECK(r.rows(0, 1) == 2);

  // idempotent and canonical
  auto m = mat<Rational>(3, 4, {1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0});
  auto a = rref(m);
  auto b = rref(a.rows);
  CHECK(exact_equal(a.rows, b.rows));
  Matrix<Rational> shuffled(3, 4);
  shuffled << m.row(2), m.row(1) * Rational(3), m.row(0) + m.row(2);
  CHECK(exact_equal(rref(shuffled).rows, a.rows));
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(Matrix<Rational>(Matrix<Rational>::Identity(3, 3))).dim() == 0);
  CHECK(kernel_basis(Matrix<Rational>(Matrix<Rational>::Zero(2, 3))).dim() == 3);
  auto k = kernel_basis(mat<Rational>(1, 2, {1, 2}));
  REQUIRE(k.dim() == 1);
  Vector<Rational> v(2);
  v << -2, 1;
  CHECK(k.contains(v));
  // canonical form scales the pivot to 1
  CHECK(k.basis()(0, 0) == 1);
  CHECK(k.basis()(0, 1) == Rational(-1, 2));

  auto m = mat<Rational>(3, 5, {1, 0, 2, 1, 1, 0, 1, 1, 1, 0, 1, 1, 3, 2, 1});
  CHECK(rank(m) + kernel_basis(m).dim() == 5);
}

TEST_CASE("quotient spaces") {
  auto q0 = quotient_space<Rational>(3, Subspace<Rational>::zero(3));
  CHECK(exact_equal(q0.projection, Matrix<Rational>(Matrix<Rational>::Identity(3, 3))));
  auto qf = quotient_space<Rational>(2, Subspace<Rational>::full(2));
  CHECK(qf.dim() == 0);

  Vector<Rational> d(2);
  d << 1, 1;
  auto q = quotient_space<Rational>(2, Subspace<Rational>::span(2, {d}));
  REQUIRE(q.dim() == 1);
  Vector<Rational> a(2), b(2);
  a << 0, 1;
  b << -1, 0;
  CHECK(exact_equal(q.project(a), q.project(b)));
  CHECK(exact_equal(Matrix<Rational>(q.projection * q.section), Matrix<Rational>(Matrix<Rational>::Identity(1, 1))));
  for (Index i = 0; i < 2; ++i) {
    Vector<Rational> e = unit_vector<Rational>(2, i);
    CHECK(q.relations.contains(Vector<Rational>(q.section * q.project(e) - e)));
  }
}

TEST_CASE("sum and intersection") {
  Vector<Rational> e0(2), e1(2), d(2);
  e0 << 1, 0;
  e1 << 0, 1;
  d << 1, 1;
  auto a = Subspace<Rational>::span(2, {e0, e1});
  auto b = Subspace<Rational>::span(2, {d});
  CHECK(intersection(a, b) == b);
  CHECK(sum(a, b) == a);
  CHECK(sum(b, b) == b);
  CHECK(intersection(b, b) == b);
  auto c0 = Subspace<Rational>::span(2, {e0});
  auto c1 = Subspace<Rational>::span(2, {e1});
  CHECK(intersection(c0, c1).dim() == 0);
  CHECK(sum(c0, c1).dim() == 2);
  CHECK_THROWS_AS(sum(c0, Subspace<Rational>::zero(3)), DimensionError);

  auto m1 = Subspace<Rational>::span_rows(mat<Rational>(2, 4, {1, 2, 0, 1, 0, 1, 1, 1}));
  auto m2 = Subspace<Rational>::span_rows(mat<Rational>(2, 4, {1, 3, 1, 2, 0, 0, 1, 5}));
  CHECK(sum(m1, m2).dim() + intersection(m1, m2).dim() == m1.dim() + m2.dim());
}

TEST_CASE("prime field elimination") {
  // over GF(3): rows (1,2) and (2,1) are dependent since 2*(1,2) = (2,4) = (2,1)
  auto m = mat<ModP>(2, 2, {1, 2, 2, 1}, 3);
  CHECK(rank(m) == 1);
  auto q = mat<Rational>(2, 2, {1, 2, 2, 1});
  CHECK(rank(q) == 2);
  auto k = kernel_basis(m);
  REQUIRE(k.dim() == 1);
  Vector<ModP> v(2);
  v << ModP(1, 3), ModP(1, 3);
  CHECK(k.contains(v));
}

TEST_CASE("sparse echelon builder agrees with dense rref") {
  auto m = mat<Rational>(4, 5, {1, 2, 0, 0, 3, 0, 0, 1, 1, 0, 1, 2, 1, 1, 3, 2, 0, 0, 5, 1});
  EchelonBuilder<Rational> eb(5);
  for (Index i = 0; i < m.rows(); ++i) eb.insert(to_sparse(Vector<Rational>(m.row(i).transpose())));
  CHECK(eb.subspace() == Subspace<Rational>::span_rows(m));
  auto ker = eb.kernel();
  CHECK(static_cast<Index>(ker.size()) == 5 - eb.rank());
  for (const auto& v : ker) CHECK(exact_zero(Vector<Rational>(m * to_dense(v, 5))));

  SparseQuotient<Rational> q(eb);
  CHECK(q.dim() == 5 - eb.rank());
  auto dq = q.dense();
  for (Index i = 0; i < 5; ++i) {
    SparseVec<Rational> e{{i, Rational(1)}};
    CHECK(exact_equal(q.project_dense(e), dq.project(unit_vector<Rational>(5, i))));
  }
}

TEST_CASE("one-sided inverses") {
  auto f = mat<Rational>(2, 3, {1, 0, 1, 0, 1, 1});
  for (auto order : {PivotOrder::leftmost, PivotOrder::rightmost}) {
    auto s = right_inverse(f, order);
    REQUIRE(s);
    CHECK(exact_equal(Matrix<Rational>(f * *s), Matrix<Rational>(Matrix<Rational>::Identity(2, 2))));
  }
  CHECK_FALSE(exact_equal(*right_inverse(f, PivotOrder::leftmost), *right_inverse(f, PivotOrder::rightmost)));
  auto l = left_inverse(Matrix<Rational>(f.transpose()));
  REQUIRE(l);
  CHECK(exact_equal(Matrix<Rational>(*l * f.transpose()), Matrix<Rational>(Matrix<Rational>::Identity(2, 2))));
}

TEST_CASE("parsed rationals are reduced") {
  const auto q = FieldSpec::rationals();
  auto half = ScalarTraits<Rational>::parse("2/4", q);
  CHECK(half == Rational(1) / Rational(2));
  CHECK(ScalarTraits<Rational>::str(half) == "1/2");
  CHECK(ScalarTraits<Rational>::parse("-6/3", q) == Rational(-2));
  CHECK(is_zero(ScalarTraits<Rational>::parse("0/7", q)));
}
