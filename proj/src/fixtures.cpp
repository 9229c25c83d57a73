#include "awb/fixtures.hpp"

#include <array>

namespace awb::fixtures {

namespace {

template <class S>
BilinearMap<S> zero_map(const FieldSpec& f, Index n) {
  BilinearMap<S> m(n, n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) m(i, j, k) = ScalarTraits<S>::from_int(0, f);
  return m;
}

template <class S>
S lit(const FieldSpec& f, long long v) {
  return ScalarTraits<S>::from_int(v, f);
}

}  // namespace

template <class S>
AssociativeAlgebra<S> matrix_algebra_2(const FieldSpec& field) {
  // e_{rc} has index 2r + c (0-based); e_{ab} e_{cd} = [b == c] e_{ad}
  auto p = zero_map<S>(field, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int d = 0; d < 2; ++d) p(2 * a + b, 2 * b + d, 2 * a + d) = lit<S>(field, 1);
  return {field, p, "M2"};
}

template <class S>
AssociativeAlgebra<S> dual_numbers(const FieldSpec& field) {
  auto p = zero_map<S>(field, 2);
  p(0, 0, 0) = lit<S>(field, 1);
  p(0, 1, 1) = lit<S>(field, 1);
  p(1, 0, 1) = lit<S>(field, 1);
  return {field, p, "D"};
}

template <class S>
AssociativeAlgebra<S> square_to_second(const FieldSpec& field) {
  auto p = zero_map<S>(field, 2);
  p(0, 0, 1) = lit<S>(field, 1);
  return {field, p, "N2"};
}

template <class S>
AssociativeAlgebra<S> zero_algebra(const FieldSpec& field, Index d) {
  return {field, zero_map<S>(field, d), "Z" + std::to_string(d)};
}

template <class S>
FiniteAwb<S> abelian(const FieldSpec& field, Index d) {
  return FiniteAwb<S>(field, zero_map<S>(field, d), zero_map<S>(field, d), "abelian" + std::to_string(d));
}

template <class S>
FiniteAwb<S> n2(const FieldSpec& field) {
  auto a = with_trivial_bracket(square_to_second<S>(field));
  a.set_name("n2");
  return a;
}

template <class S>
FiniteAwb<S> t_m2(const FieldSpec& field) {
  auto a = tautological(matrix_algebra_2<S>(field));
  a.set_name("t_m2");
  return a;
}

template <class S>
FiniteAwb<S> i_m2(const FieldSpec& field) {
  auto a = with_trivial_bracket(matrix_algebra_2<S>(field));
  a.set_name("i_m2");
  return a;
}

template <class S>
FiniteAwb<S> t_m2_squared(const FieldSpec& field) {
  auto t = t_m2<S>(field);
  auto a = direct_sum(t, t).algebra;
  a.set_name("t_m2_sq");
  return a;
}

template <class S>
FiniteAwb<S> heisenberg(const FieldSpec& field) {
  auto b = zero_map<S>(field, 3);
  b(0, 1, 2) = lit<S>(field, 1);
  b(1, 0, 2) = lit<S>(field, -1);
  return FiniteAwb<S>(field, zero_map<S>(field, 3), b, "heisenberg");
}

template <class S>
FiniteAwb<S> symmetric_bracket(const FieldSpec& field) {
  auto b = zero_map<S>(field, 2);
  b(0, 1, 0) = lit<S>(field, 1);
  b(1, 0, 0) = lit<S>(field, 1);
  return FiniteAwb<S>(field, zero_map<S>(field, 2), b, "sym_bracket");
}

template <class S>
FiniteAwb<S> poisson_truncated(const FieldSpec& field) {
  // 1, x, y, xy with x^2 = y^2 = 0 and {f,g} = xy (f_x g_y - f_y g_x)
  auto p = zero_map<S>(field, 4);
  const std::array<std::array<Index, 3>, 9> mult = {{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 2, 2}, {2, 0, 2},
                                                     {0, 3, 3}, {3, 0, 3}, {1, 2, 3}, {2, 1, 3}}};
  for (const auto& [i, j, k] : mult) p(i, j, k) = lit<S>(field, 1);
  auto b = zero_map<S>(field, 4);
  b(1, 2, 3) = lit<S>(field, 1);
  b(2, 1, 3) = lit<S>(field, -1);
  return FiniteAwb<S>(field, p, b, "poisson_truncated");
}

template <class S>
FiniteAwb<S> sl2_bracket(const FieldSpec& field) {
  // e, f, h = 0, 1, 2: [e,f] = h, [h,e] = 2e, [h,f] = -2f, antisymmetric
  auto b = zero_map<S>(field, 3);
  auto set = [&](Index i, Index j, Index k, long long v) {
    b(i, j, k) = lit<S>(field, v);
    b(j, i, k) = lit<S>(field, -v);
  };
  set(0, 1, 2, 1);
  set(2, 0, 0, 2);
  set(2, 1, 1, -2);
  return FiniteAwb<S>(field, zero_map<S>(field, 3), b, "sl2_bracket");
}

template <class S>
FiniteAwb<S> t_dual_numbers(const FieldSpec& field) {
  auto a = tautological(dual_numbers<S>(field));
  a.set_name("t_dual");
  return a;
}

template <class S>
FiniteAwb<S> corrupted_idempotent(const FieldSpec& field) {
  auto p = zero_map<S>(field, 1), b = zero_map<S>(field, 1);
  p(0, 0, 0) = lit<S>(field, 1);
  b(0, 0, 0) = lit<S>(field, 1);
  return FiniteAwb<S>(field, p, b, "bad_idempotent", Validation::skip);
}

template <class S>
FiniteAwb<S> corrupted_nonassociative(const FieldSpec& field) {
  auto p = zero_map<S>(field, 2);
  p(0, 1, 1) = lit<S>(field, 1);
  p(1, 0, 0) = lit<S>(field, 1);
  return FiniteAwb<S>(field, p, zero_map<S>(field, 2), "bad_nonassociative", Validation::skip);
}

template <class S>
FiniteAwb<S> corrupted_anticommutator(const FieldSpec& field) {
  auto m = matrix_algebra_2<S>(field);
  auto b = zero_map<S>(field, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k) b(i, j, k) = m.product(i, j, k) + m.product(j, i, k);
  return FiniteAwb<S>(field, m.product, b, "bad_anticommutator", Validation::skip);
}

template <class S>
std::vector<FiniteAwb<S>> corpus(const FieldSpec& field) {
  return {abelian<S>(field, 1), abelian<S>(field, 2), abelian<S>(field, 3), n2<S>(field),
          t_m2<S>(field),       i_m2<S>(field),       t_m2_squared<S>(field), heisenberg<S>(field),
          symmetric_bracket<S>(field), t_dual_numbers<S>(field), sl2_bracket<S>(field),
          poisson_truncated<S>(field)};
}

template <class S>
std::vector<FiniteAwb<S>> perfect_corpus(const FieldSpec& field) {
  return {t_m2<S>(field), t_m2_squared<S>(field), sl2_bracket<S>(field)};
}

template <class S>
AwbAction<S> matrix_representation(const FieldSpec& field) {
  auto t = t_m2<S>(field);
  auto act = self_action(t);
  act.actee = abelian<S>(field, 4);
  act.actee.set_name("m2_module");
  return act;
}

template <class S>
AwbMorphism<S> split_central_extension(const FiniteAwb<S>& a, Index v) {
  auto d = direct_sum(a, abelian<S>(a.field(), v));
  d.algebra.set_name(a.name() + "+abelian" + std::to_string(v));
  d.project_first.source = d.algebra;
  return d.project_first;
}

template <class S>
std::vector<NamedXMod<S>> xmod_corpus(const FieldSpec& field) {
  std::vector<NamedXMod<S>> out;
  auto sq = t_m2_squared<S>(field);
  auto t = t_m2<S>(field);
  auto n = n2<S>(field);
  Matrix<S> first = Matrix<S>::Zero(4, 8);
  for (Index i = 0; i < 4; ++i) first(i, i) = lit<S>(field, 1);
  out.push_back({"ideal_inclusion", ideal_inclusion_xmod(sq, Subspace<S>::span_rows(first))});
  Matrix<S> y(1, 2);
  y << lit<S>(field, 0), lit<S>(field, 1);
  out.push_back({"n2_square_ideal", ideal_inclusion_xmod(n, Subspace<S>::span_rows(y))});
  out.push_back({"identity", ideal_inclusion_xmod(t, Subspace<S>::full(4))});
  out.push_back({"representation", representation_xmod(matrix_representation<S>(field))});
  out.push_back({"central_extension", central_extension_xmod(split_central_extension(t, 1))});
  out.push_back({"zero_trivial", representation_xmod(trivial_action(n, abelian<S>(field, 2)))});
  return out;
}

template <class S>
std::vector<NamedPair<S>> abelian_trivial_pairs(const FieldSpec& field) {
  std::vector<NamedPair<S>> out;
  for (Index p = 1; p <= 3; ++p)
    for (Index q = p; q <= 3; ++q)
      out.push_back({"trivial:abelian" + std::to_string(p) + ",abelian" + std::to_string(q),
                     trivial_mutual_actions(abelian<S>(field, p), abelian<S>(field, q))});
  return out;
}

template <class S>
std::vector<NamedPair<S>> compatible_pairs(const FieldSpec& field) {
  std::vector<NamedPair<S>> out;
  for (const auto& a : corpus<S>(field)) out.push_back({"self:" + a.name(), self_mutual_actions(a)});
  auto sq = t_m2_squared<S>(field);
  Matrix<S> first = Matrix<S>::Zero(4, 8), second = Matrix<S>::Zero(4, 8);
  for (Index i = 0; i < 4; ++i) {
    first(i, i) = lit<S>(field, 1);
    second(i, 4 + i) = lit<S>(field, 1);
  }
  auto s1 = Subspace<S>::span_rows(first), s2 = Subspace<S>::span_rows(second);
  out.push_back({"ideals:t_m2_sq:first,second", mutual_actions_from_ideals(sq, s1, s2).actions});
  out.push_back({"ideals:t_m2_sq:first,all", mutual_actions_from_ideals(sq, s1, Subspace<S>::full(8)).actions});
  auto n = n2<S>(field);
  Matrix<S> y(1, 2);
  y << lit<S>(field, 0), lit<S>(field, 1);
  out.push_back({"ideals:n2:square,all", mutual_actions_from_ideals(n, Subspace<S>::span_rows(y), Subspace<S>::full(2)).actions});
  auto h = heisenberg<S>(field);
  Matrix<S> z(1, 3);
  z << lit<S>(field, 0), lit<S>(field, 0), lit<S>(field, 1);
  out.push_back({"ideals:heisenberg:center,all",
                 mutual_actions_from_ideals(h, Subspace<S>::span_rows(z), Subspace<S>::full(3)).actions});
  for (auto& p : abelian_trivial_pairs<S>(field)) out.push_back(std::move(p));
  out.push_back({"trivial:n2,abelian1", trivial_mutual_actions(n, abelian<S>(field, 1))});
  out.push_back({"trivial:t_m2,sym_bracket", trivial_mutual_actions(t_m2<S>(field), symmetric_bracket<S>(field))});
  return out;
}

template <class S>
RightExactnessInput<S> summand_sequence(const FiniteAwb<S>& b) {
  auto ds = direct_sum(b, b);
  const auto& a = ds.algebra;
  auto m1 = image(ds.inject_first.matrix);
  auto nsub = image(ds.inject_second.matrix);
  auto p1 = mutual_actions_from_ideals(a, m1, nsub);
  auto p2 = mutual_actions_from_ideals(a, Subspace<S>::full(a.dim()), nsub);
  auto p3 = mutual_actions_from_ideals(a, nsub, nsub);
  AwbMorphism<S> f{p1.m.algebra, p2.m.algebra, p1.m.inclusion.matrix};
  AwbMorphism<S> g{p2.m.algebra, p3.m.algebra, pivot_selector(nsub)};
  return {f, g, p1.actions, p2.actions, p3.actions};
}

#define AWB_FIXTURES_INSTANTIATE(S)                                              \
  template AssociativeAlgebra<S> matrix_algebra_2<S>(const FieldSpec&);          \
  template AssociativeAlgebra<S> dual_numbers<S>(const FieldSpec&);              \
  template AssociativeAlgebra<S> square_to_second<S>(const FieldSpec&);          \
  template AssociativeAlgebra<S> zero_algebra<S>(const FieldSpec&, Index);       \
  template FiniteAwb<S> abelian<S>(const FieldSpec&, Index);                     \
  template FiniteAwb<S> n2<S>(const FieldSpec&);                                 \
  template FiniteAwb<S> t_m2<S>(const FieldSpec&);                               \
  template FiniteAwb<S> i_m2<S>(const FieldSpec&);                               \
  template FiniteAwb<S> t_m2_squared<S>(const FieldSpec&);                       \
  template FiniteAwb<S> heisenberg<S>(const FieldSpec&);                         \
  template FiniteAwb<S> symmetric_bracket<S>(const FieldSpec&);                  \
  template FiniteAwb<S> t_dual_numbers<S>(const FieldSpec&);                     \
  template FiniteAwb<S> sl2_bracket<S>(const FieldSpec&);                        \
  template FiniteAwb<S> poisson_truncated<S>(const FieldSpec&);                  \
  template FiniteAwb<S> corrupted_idempotent<S>(const FieldSpec&);               \
  template FiniteAwb<S> corrupted_nonassociative<S>(const FieldSpec&);           \
  template FiniteAwb<S> corrupted_anticommutator<S>(const FieldSpec&);           \
  template std::vector<FiniteAwb<S>> corpus<S>(const FieldSpec&);                \
  template std::vector<FiniteAwb<S>> perfect_corpus<S>(const FieldSpec&);        \
  template AwbAction<S> matrix_representation<S>(const FieldSpec&);              \
  template AwbMorphism<S> split_central_extension<S>(const FiniteAwb<S>&, Index); \
  template std::vector<NamedXMod<S>> xmod_corpus<S>(const FieldSpec&);           \
  template std::vector<NamedPair<S>> compatible_pairs<S>(const FieldSpec&);      \
  template std::vector<NamedPair<S>> abelian_trivial_pairs<S>(const FieldSpec&); \
  template RightExactnessInput<S> summand_sequence<S>(const FiniteAwb<S>&);

AWB_FIXTURES_INSTANTIATE(Rational)
AWB_FIXTURES_INSTANTIATE(ModP)

}  // namespace awb::fixtures
