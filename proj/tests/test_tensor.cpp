#include "doctest.h"

#include <map>
#include <set>

#include "awb/fixtures.hpp"
#include "awb/tensor.hpp"

using namespace awb;
namespace fx = awb::fixtures;
using formula::Sort;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime(5);

Vector<Rational> e(Index n, Index i) { return unit_vector<Rational>(n, i); }

std::string side_key(const formula::Equation& eq) {
  std::string l = formula::to_string(eq.lhs), r = formula::to_string(eq.rhs);
  return l < r ? l + "|" + r : r + "|" + l;
}

}  // namespace

TEST_CASE("generator indexing is a bijection") {
  for (auto [dm, dn] : {std::pair<Index, Index>{1, 1}, {2, 3}, {3, 2}, {4, 4}}) {
    std::set<Index> seen;
    for (int kind = 0; kind < 2; ++kind)
      for (int o = 0; o < 2; ++o) {
        const Index rows = o == 0 ? dm : dn, cols = o == 0 ? dn : dm;
        for (Index i = 0; i < rows; ++i)
          for (Index j = 0; j < cols; ++j) {
            TensorGeneratorIndex g{static_cast<TensorKind>(kind), static_cast<Orientation>(o), i, j};
            Index f = flat_generator(dm, dn, g);
            CHECK(generator_at(dm, dn, f) == g);
            seen.insert(f);
          }
      }
    CHECK(static_cast<Index>(seen.size()) == 4 * dm * dn);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 4 * dm * dn - 1);
  }
  CHECK(generator_name({TensorKind::circledast, Orientation::nm, 2, 0}) == "ca(n2,m0)");
  CHECK_THROWS_AS(generator_at(2, 2, 16), DimensionError);
}

TEST_CASE("relation families: displayed table and exchanged copies") {
  const auto& fam = tensor_relation_families();
  const auto& c = tensor_family_counts();
  CHECK(c.displayed_lines == 22);
  CHECK(c.displayed_families == 38);  // 16 interchange lines x {od, ca} + 6
  CHECK(c.swapped_generated == 38);
  CHECK(c.total == fam.size());
  CHECK(c.total == c.displayed_families + c.swapped_new);
  MESSAGE("exchanged families not already displayed: " << c.swapped_new);
  std::set<std::string> keys;
  for (const auto& f : fam) keys.insert(side_key(f));
  CHECK(keys.size() == fam.size());  // no duplicates survive
  for (std::size_t k = 0; k < c.displayed_families; ++k)
    CHECK(keys.count(side_key(formula::swapped(fam[k], "x"))) == 1);
  // the exchanged interchange lines coincide with displayed ones
  for (std::size_t k = c.displayed_families; k < fam.size(); ++k) CHECK(fam[k].id.rfind("rel.r", 0) == 0);
  for (std::size_t k = c.displayed_families; k < fam.size(); ++k) {
    CAPTURE(fam[k].id);
    CHECK(fam[k].id.find(".od.swap") == std::string::npos);
    CHECK(fam[k].id.find(".ca.swap") == std::string::npos);
  }
  CHECK(c.swapped_new == 6);
}

TEST_CASE("structure rules follow psi_M on the left and psi_N on the right") {
  // Written out from the generator definitions of psi_M and psi_N.
  const std::map<std::string, std::string> psi_m = {
      {"od(m,n)", "rd(m,n)"}, {"od(n,m)", "ld(n,m)"}, {"ca(m,n)", "rs(m,n)"}, {"ca(n,m)", "ls(n,m)"}};
  const std::map<std::string, std::string> psi_n = {
      {"od(m2,n2)", "ld(m2,n2)"}, {"od(n2,m2)", "rd(n2,m2)"}, {"ca(m2,n2)", "ls(m2,n2)"}, {"ca(n2,m2)", "rs(n2,m2)"}};
  const auto& rules = tensor_structure_rules();
  CHECK(rules.size() == 16);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& r : rules) {
    CAPTURE(r.left);
    CAPTURE(r.right);
    pairs.insert({r.left, r.right});
    CHECK(r.product == "od(" + psi_m.at(r.left) + "," + psi_n.at(r.right) + ")");
    CHECK(r.bracket == "ca(" + psi_m.at(r.left) + "," + psi_n.at(r.right) + ")");
  }
  CHECK(pairs.size() == 16);
}

TEST_CASE("trivial actions between abelian algebras: four full blocks") {
  for (const auto& [name, mut] : fx::abelian_trivial_pairs<Rational>(Q)) {
    CAPTURE(name);
    const Index p = mut.m().dim(), q = mut.n().dim();
    auto t = nonabelian_tensor(mut);
    CHECK(t.relation_rank() == 0);
    CHECK(t.awb.dim() == 4 * p * q);
    CHECK(t.awb.is_abelian());
    auto r = trivial_tensor_check(mut.m(), mut.n());
    CHECK(r.ok());
  }
  auto r = trivial_tensor_check(fx::abelian<Rational>(Q, 2), fx::abelian<Rational>(Q, 3));
  CHECK(r.tensor.awb.dim() == 24);
}

TEST_CASE("trivial actions on non-abelian factors: the literal presentation") {
  // With zero actions the families that survive are od(m1m2, n), od([m1,m2], n),
  // od(n, m1m2), od(n, [m1,m2]), ca(m1m2, n) and their exchanges. Nothing kills
  // ca([m1,m2], n) or ca(m, n1n2), so the circledast blocks are (M/MM) (x) N and
  // (N/NN) (x) M. For M = n2 (MM = <y>, no bracket) and N = abelian1:
  // od blocks 1 and 1, circledast blocks 1 (x (*) n) and 2 (n (*) x, n (*) y).
  auto r = trivial_tensor_check(fx::n2<Rational>(Q), fx::abelian<Rational>(Q, 1));
  CHECK(r.m_ab == 1);
  CHECK(r.n_ab == 1);
  CHECK(r.expected_dim == 4);
  CHECK(r.tensor.awb.dim() == 5);
  CHECK(r.block_dims == std::array<Index, 4>{1, 1, 1, 2});
  CHECK(r.checks.passed("abelian"));
  CHECK_FALSE(r.checks.passed("dimension"));
  CHECK_FALSE(r.ok());

  // Perfect M: every od block dies, the circledast blocks do not.
  auto p = trivial_tensor_check(fx::t_m2<Rational>(Q), fx::abelian<Rational>(Q, 1));
  CHECK(p.m_ab == 0);
  CHECK(p.block_dims[0] == 0);
  CHECK(p.block_dims[1] == 0);
  CHECK(p.tensor.awb.is_abelian());
  MESSAGE("T(M2) with abelian1, trivial actions: dim " << p.tensor.awb.dim() << ", blocks " << p.block_dims[2] << " "
                                                          << p.block_dims[3]);
}

TEST_CASE("zero-dimensional factors") {
  auto z = FiniteAwb<Rational>::abelian(Q, 0);
  auto t = nonabelian_tensor(trivial_mutual_actions(z, z));
  CHECK(t.awb.dim() == 0);
  auto u = nonabelian_tensor(self_mutual_actions(z));
  CHECK(u.awb.dim() == 0);
  auto x = xmod_on_tensor(u);
  CHECK(x.over_m.mu.matrix.size() == 0);
}

TEST_CASE("incompatible actions are rejected") {
  auto t = fx::t_m2<Rational>(Q);
  auto mut = self_mutual_actions(t);
  mut.m_on_n.ldot(0, 0, 0) += Rational(1);
  CHECK_THROWS_AS(relation_span(mut), PreconditionError);
  CHECK_THROWS_AS(nonabelian_tensor(mut), PreconditionError);
}

TEST_CASE("every compatible pair: operations descend, axioms hold, psi maps and crossed modules") {
  for (const auto& [name, mut] : fx::compatible_pairs<Rational>(Q)) {
    CAPTURE(name);
    REQUIRE(check_compatibility(mut).valid());
    TensorProduct<Rational> t;
    REQUIRE_NOTHROW(t = nonabelian_tensor(mut));
    CHECK(validate_awb(t.awb).valid());
    CHECK(t.awb.dim() == t.generator_dim() - t.relation_rank());
    TensorXMods<Rational> x;
    REQUIRE_NOTHROW(x = xmod_on_tensor(t));
    CHECK(check_morphism(x.over_m.mu).valid());
    CHECK(check_morphism(x.over_n.mu).valid());
    CHECK(validate_action(x.over_m.act).valid());
    CHECK(validate_action(x.over_n.act).valid());
    CHECK(validate_xmod(x.over_m).valid());
    CHECK(validate_xmod(x.over_n).valid());
    // psi vanishes on every relation vector
    auto psi = psi_maps(t);
    CHECK(exact_zero(Matrix<Rational>(psi.psi_m.matrix * t.embedding() * t.relations().basis_columns())));
    MESSAGE(name << ": dim " << t.awb.dim() << " of " << t.generator_dim() << " generators");
  }
}

TEST_CASE("compatible pairs over GF(5)") {
  for (const auto& [name, mut] : fx::compatible_pairs<ModP>(F5)) {
    CAPTURE(name);
    if (mut.m().dim() * mut.n().dim() > 16) continue;  // the largest ones are covered over Q
    auto t = nonabelian_tensor(mut);
    CHECK(validate_awb(t.awb).valid());
    auto x = xmod_on_tensor(t);
    CHECK(validate_xmod(x.over_m).valid());
    CHECK(validate_xmod(x.over_n).valid());
  }
}

TEST_CASE("pure tensors") {
  auto a = fx::t_m2<Rational>(Q);
  auto t = nonabelian_tensor(self_mutual_actions(a));
  const Index d = 4;
  Vector<Rational> x = e(d, 0) + Rational(2) * e(d, 3), y = e(d, 1) - e(d, 2);
  CHECK(exact_zero(pure_tensor(t, Vector<Rational>(Vector<Rational>::Zero(d)), y, TensorKind::odot, Orientation::mn)));
  Rational lambda(3, 7);
  for (auto kind : {TensorKind::odot, TensorKind::circledast}) {
    Vector<Rational> base = pure_tensor(t, x, y, kind, Orientation::mn);
    CHECK(exact_equal(Vector<Rational>(lambda * base), pure_tensor(t, Vector<Rational>(lambda * x), y, kind, Orientation::mn)));
    CHECK(exact_equal(Vector<Rational>(lambda * base), pure_tensor(t, x, Vector<Rational>(lambda * y), kind, Orientation::mn)));
  }
  // (m1 m2) (.) n = m1 (.) (m2 n) for every basis triple
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) {
        auto lhs = pure_tensor(t, a.mul(e(d, i), e(d, j)), e(d, k), TensorKind::odot, Orientation::mn);
        auto rhs = pure_tensor(t, e(d, i), a.mul(e(d, j), e(d, k)), TensorKind::odot, Orientation::mn);
        CHECK(exact_equal(lhs, rhs));
      }
  CHECK_THROWS_AS(pure_tensor(t, Vector<Rational>(Vector<Rational>::Zero(3)), y, TensorKind::odot, Orientation::mn), DimensionError);
}

TEST_CASE("psi and induced actions on the self tensor square of T(M2)") {
  auto a = fx::t_m2<Rational>(Q);
  auto t = nonabelian_tensor(self_mutual_actions(a));
  auto psi = psi_maps(t);
  // e11 (.) e12 -> e11 e12 = e12
  Vector<Rational> g = pure_tensor(t, e(4, 0), e(4, 1), TensorKind::odot, Orientation::mn);
  CHECK(exact_equal(Vector<Rational>(psi.psi_m.matrix * g), e(4, 1)));
  CHECK(exact_equal(Vector<Rational>(psi.psi_n.matrix * g), e(4, 1)));
  CHECK(is_surjective(psi.psi_m));

  auto acts = induced_actions(t);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k) {
        // ^{a.}(a' (.) a'') = a (.) (a' a'')
        Vector<Rational> gen = pure_tensor(t, e(4, j), e(4, k), TensorKind::odot, Orientation::mn);
        Vector<Rational> lhs = acts.by_m.ldot.apply(e(4, i), gen);
        CHECK(exact_equal(lhs, pure_tensor(t, e(4, i), a.mul(e(4, j), e(4, k)), TensorKind::odot, Orientation::mn)));
        // (m' (.) n')^{*m} = (^{m'.}n') (*) m
        Vector<Rational> rs = acts.by_m.rstar.apply(gen, e(4, i));
        CHECK(exact_equal(rs, pure_tensor(t, a.mul(e(4, j), e(4, k)), e(4, i), TensorKind::circledast, Orientation::nm)));
      }
}

TEST_CASE("trivial actions give zero psi maps and trivial induced actions") {
  auto mut = trivial_mutual_actions(fx::n2<Rational>(Q), fx::abelian<Rational>(Q, 2));
  auto t = nonabelian_tensor(mut);
  auto psi = psi_maps(t);
  CHECK(exact_zero(psi.psi_m.matrix));
  CHECK(exact_zero(psi.psi_n.matrix));
  auto acts = induced_actions(t);
  for (int k = 0; k < 4; ++k) {
    CHECK(acts.by_m.map(k).is_zero_map());
    CHECK(acts.by_n.map(k).is_zero_map());
  }
}

TEST_CASE("perfect factors give a perfect tensor square") {
  for (const auto& a : fx::perfect_corpus<Rational>(Q)) {
    CAPTURE(a.name());
    auto t = nonabelian_tensor(self_mutual_actions(a));
    CHECK(is_perfect(t.awb));
  }
}

TEST_CASE("functoriality") {
  auto sq = fx::t_m2_squared<Rational>(Q);
  auto t_sq = nonabelian_tensor(self_mutual_actions(sq));
  auto id = identity_morphism(sq);
  auto fid = tensor_functor(id, id, t_sq, t_sq);
  CHECK(exact_equal(fid.matrix, t_sq.awb.identity_matrix()));

  // swap of the two summands and the projection onto the first
  Matrix<Rational> swap = Matrix<Rational>::Zero(8, 8);
  for (Index i = 0; i < 4; ++i) {
    swap(i, 4 + i) = Rational(1);
    swap(4 + i, i) = Rational(1);
  }
  AwbMorphism<Rational> sw{sq, sq, swap};
  auto t = fx::t_m2<Rational>(Q);
  Matrix<Rational> pr = Matrix<Rational>::Zero(4, 8);
  for (Index i = 0; i < 4; ++i) pr(i, i) = Rational(1);
  AwbMorphism<Rational> p{sq, t, pr};
  auto t_t = nonabelian_tensor(self_mutual_actions(t));
  auto fsw = tensor_functor(sw, sw, t_sq, t_sq);
  auto fp = tensor_functor(p, p, t_sq, t_t);
  auto comp = compose(p, sw);
  auto fcomp = tensor_functor(comp, comp, t_sq, t_t);
  CHECK(exact_equal(fcomp.matrix, Matrix<Rational>(fp.matrix * fsw.matrix)));
  CHECK(exact_equal(Matrix<Rational>(fsw.matrix * fsw.matrix), t_sq.awb.identity_matrix()));

  // zero maps into trivially acting abelian targets
  auto ab = fx::abelian<Rational>(Q, 1);
  auto t_ab = nonabelian_tensor(trivial_mutual_actions(ab, ab));
  auto z = zero_morphism(t, ab);
  auto fz = tensor_functor(z, z, t_t, t_ab);
  CHECK(exact_zero(fz.matrix));
}

TEST_CASE("functor preconditions") {
  auto t = fx::t_m2<Rational>(Q);
  auto tt = nonabelian_tensor(self_mutual_actions(t));
  // a linear automorphism that is not a morphism
  Matrix<Rational> m = Matrix<Rational>::Identity(4, 4);
  m(0, 1) = Rational(1);
  AwbMorphism<Rational> bad{t, t, m};
  CHECK_THROWS_AS(tensor_functor(bad, bad, tt, tt), PreconditionError);
  // a morphism that is not equivariant for the chosen actions
  auto ab = fx::abelian<Rational>(Q, 1);
  auto n = fx::n2<Rational>(Q);
  auto tn = nonabelian_tensor(self_mutual_actions(n));
  auto triv = nonabelian_tensor(trivial_mutual_actions(n, n));
  auto idn = identity_morphism(n);
  CHECK_FALSE(check_equivariance(idn.matrix, idn.matrix, self_mutual_actions(n), trivial_mutual_actions(n, n)).valid());
  CHECK_THROWS_AS(tensor_functor(idn, idn, tn, triv), PreconditionError);
  (void)ab;
}

TEST_CASE("right exactness") {
  SUBCASE("summand sequence of T(M2) (+) T(M2)") {
    auto in = fx::summand_sequence(fx::t_m2<Rational>(Q));
    auto r = right_exactness_check(in);
    INFO(r.checks.describe());
    CHECK(r.checks.hypotheses_hold());
    CHECK(r.ok());
    MESSAGE("dims " << r.dim1 << " " << r.dim2 << " " << r.dim3 << ", ranks " << r.rank_f << " " << r.rank_g);
  }
  SUBCASE("summand sequences over non-perfect summands") {
    // M1 and N are the two summands and act trivially on each other, so
    // M1 (x) N is the trivial-action tensor and need not vanish.
    for (const auto& b : {fx::n2<Rational>(Q), fx::heisenberg<Rational>(Q)}) {
      CAPTURE(b.name());
      auto r = right_exactness_check(fx::summand_sequence(b));
      INFO(r.checks.describe());
      CHECK(r.ok());
      CHECK(r.dim1 > 0);
      CHECK(r.rank_g == r.dim3);
      CHECK(r.rank_f == r.dim2 - r.dim3);
    }
  }
  SUBCASE("M1 = 0") {
    auto b = fx::n2<Rational>(Q);
    auto zero = FiniteAwb<Rational>::abelian(Q, 0);
    auto nn = fx::abelian<Rational>(Q, 1);
    RightExactnessInput<Rational> in{zero_morphism(zero, b), identity_morphism(b), trivial_mutual_actions(zero, nn),
                                     trivial_mutual_actions(b, nn), trivial_mutual_actions(b, nn)};
    auto r = right_exactness_check(in);
    INFO(r.checks.describe());
    CHECK(r.ok());
    CHECK(r.rank_f == 0);
    CHECK(r.rank_g == r.dim2);
    CHECK(r.dim2 == r.dim3);
  }
  SUBCASE("abelian split sequence with trivial actions") {
    auto m1 = fx::abelian<Rational>(Q, 1), m3 = fx::abelian<Rational>(Q, 2);
    auto ds = direct_sum(m1, m3);
    auto nn = fx::abelian<Rational>(Q, 2);
    RightExactnessInput<Rational> in{ds.inject_first, ds.project_second, trivial_mutual_actions(m1, nn),
                                     trivial_mutual_actions(ds.algebra, nn), trivial_mutual_actions(m3, nn)};
    auto r = right_exactness_check(in);
    INFO(r.checks.describe());
    CHECK(r.ok());
    CHECK(r.dim1 == 4 * 1 * 2);
    CHECK(r.dim2 == 4 * 3 * 2);
    CHECK(r.dim3 == 4 * 2 * 2);
    CHECK(r.rank_f == r.dim1);
  }
  SUBCASE("hypothesis failure is reported as such") {
    auto in = fx::summand_sequence(fx::t_m2<Rational>(Q));
    in.g.matrix.setZero();
    auto r = right_exactness_check(in);
    CHECK_FALSE(r.checks.hypotheses_hold());
    CHECK_FALSE(r.checks.passed("g_surjective"));
  }
}

TEST_CASE("ideal sequence") {
  SUBCASE("first summand of T(M2) (+) T(M2)") {
    auto sq = fx::t_m2_squared<Rational>(Q);
    Matrix<Rational> first = Matrix<Rational>::Zero(4, 8);
    for (Index i = 0; i < 4; ++i) first(i, i) = Rational(1);
    auto r = ideal_tensor_sequence(sq, Subspace<Rational>::span_rows(first));
    INFO(r.checks.describe());
    CHECK(r.ok());
    CHECK(r.rank_sigma + r.rank_tau == r.dim_aa);
  }
  SUBCASE("M = 0 and M = A") {
    auto a = fx::t_m2<Rational>(Q);
    auto r0 = ideal_tensor_sequence(a, Subspace<Rational>::zero(4));
    INFO(r0.checks.describe());
    CHECK(r0.ok());
    CHECK(r0.rank_sigma == 0);
    CHECK(r0.rank_tau == r0.dim_aa);
    auto r1 = ideal_tensor_sequence(a, Subspace<Rational>::full(4));
    INFO(r1.checks.describe());
    CHECK(r1.ok());
    CHECK(r1.dim_qq == 0);
    CHECK(r1.rank_sigma == r1.dim_aa);
  }
  SUBCASE("not an ideal") {
    auto a = fx::t_m2<Rational>(Q);
    Matrix<Rational> v = Matrix<Rational>::Zero(1, 4);
    v(0, 0) = Rational(1);
    auto r = ideal_tensor_sequence(a, Subspace<Rational>::span_rows(v));
    CHECK_FALSE(r.checks.hypotheses_hold());
  }
}

TEST_CASE("the quotient by I_A") {
  for (Index d = 1; d <= 3; ++d) {
    auto r = ia_quotient(fx::abelian<Rational>(Q, d));
    CHECK(r.ia.dim() == 0);
    CHECK(r.dim() == 2 * d * d);
    CHECK_FALSE(r.to_tensor);
  }
  auto n = ia_quotient(fx::n2<Rational>(Q));
  CHECK_FALSE(n.perfect);
  CHECK_FALSE(n.to_tensor);
  for (const auto& a : fx::perfect_corpus<Rational>(Q)) {
    CAPTURE(a.name());
    auto r = ia_quotient(a);
    INFO(r.checks.describe());
    CHECK(r.perfect);
    REQUIRE(r.to_tensor);
    CHECK(r.checks.ok());
    auto t = nonabelian_tensor(self_mutual_actions(a));
    CHECK(r.dim() == t.awb.dim());
  }
  auto g = ia_quotient(fx::t_m2<ModP>(F5));
  CHECK(g.checks.ok());
}
