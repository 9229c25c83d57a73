#include "awb/central.hpp"

#include "awb/fixtures.hpp"

namespace awb {

namespace {

template <class S>
Matrix<S> coordinates_in(const Matrix<S>& basis, const Matrix<S>& vectors) {
  auto l = left_inverse(basis);
  if (!l) throw VerificationFailure("coordinates_in: basis columns are dependent");
  return *l * vectors;
}

std::string dims_pair(const std::string& a, Index x, const std::string& b, Index y) {
  return a + " " + std::to_string(x) + ", " + b + " " + std::to_string(y);
}

}  // namespace

template <class S>
CheckList check_central_extension(const AwbMorphism<S>& phi) {
  CheckList c;
  c.hypothesis("morphism", check_morphism(phi).valid());
  c.hypothesis("surjective", is_surjective(phi));
  const auto& b = phi.source;
  auto ker = kernel(phi);
  c.hypothesis("kernel_central", commutator_ideal(b, ker, Subspace<S>::full(b.dim())).dim() == 0);
  return c;
}

template <class S>
CentralExtension<S> validate_central_extension(const AwbMorphism<S>& phi) {
  auto c = check_central_extension(phi);
  if (!c.ok()) throw PreconditionError("not a central extension\n" + c.describe());
  return {phi, kernel(phi)};
}

template <class S>
UceResult<S> uce(const FiniteAwb<S>& a, const HomologyOptions& opts) {
  if (!is_perfect(a)) throw PreconditionError("uce: the algebra is not perfect");
  UceResult<S> u;
  u.tensor = nonabelian_tensor(self_mutual_actions(a));
  auto psi = psi_maps(u.tensor);
  u.checks.conclusion("psi_sides_agree", exact_equal(psi.psi_m.matrix, psi.psi_n.matrix));
  u.psi = psi.psi_m;
  u.kernel = kernel(u.psi);
  u.checks.conclusion("surjective", is_surjective(u.psi));
  const auto& t = u.tensor.awb;
  u.checks.conclusion("kernel_central", commutator_ideal(t, u.kernel, Subspace<S>::full(t.dim())).dim() == 0);
  u.checks.conclusion("tensor_perfect", is_perfect(t));
  u.h1_dim = homology(a, 1, opts).dimension;
  u.checks.conclusion("kernel_is_h1", u.kernel.dim() == u.h1_dim,
                      dims_pair("dim Ker psi_A", u.kernel.dim(), "dim H_1", u.h1_dim));
  return u;
}

template <class S>
UniversalityReport<S> universality_check(const UceResult<S>& u, const CentralExtension<S>& ce) {
  const auto& a = u.psi.target;
  if (!(ce.phi.target == a)) throw PreconditionError("universality_check: extensions of different algebras");
  UniversalityReport<S> r;
  const auto& b = ce.phi.source;
  const auto& t = u.tensor;
  const Index d = a.dim(), gdim = t.generator_dim();

  auto s1 = right_inverse(ce.phi.matrix);
  if (!s1) throw PreconditionError("universality_check: phi is not surjective");
  // shift every preimage by one kernel vector
  Matrix<S> s2 = *s1;
  if (ce.kernel.dim() > 0) {
    Vector<S> k = ce.kernel.basis().row(0).transpose();
    for (Index j = 0; j < d; ++j) s2.col(j) += k;
    r.sections_differ = d > 0;
  }

  auto build = [&](const Matrix<S>& s, bool& well_defined) {
    std::vector<SparseVec<S>> val(static_cast<std::size_t>(gdim));
    for (Index g = 0; g < gdim; ++g) {
      auto gi = generator_at(d, d, g);
      Vector<S> x = s.col(gi.i), y = s.col(gi.j);
      val[g] = to_sparse(gi.kind == TensorKind::odot ? b.mul(x, y) : b.br(x, y));
    }
    well_defined = true;
    SparseAccumulator<S> acc(b.dim());
    for (const auto& row : t.quotient.relations().rows()) {
      for (const auto& [g, c] : row) acc.add(val[g], c);
      if (!acc.take().empty()) well_defined = false;
    }
    Matrix<S> m = Matrix<S>::Zero(b.dim(), t.awb.dim());
    for (Index q = 0; q < t.awb.dim(); ++q) m.col(q) = to_dense(val[t.quotient.lift(q)], b.dim());
    return m;
  };
  bool wd1 = false, wd2 = false;
  r.alpha = build(*s1, wd1);
  r.alpha_second = build(s2, wd2);
  r.checks.conclusion("well_defined", wd1 && wd2);
  auto morph = check_morphism(AwbMorphism<S>{t.awb, b, r.alpha});
  r.checks.conclusion("morphism", morph.valid(), morph.valid() ? "" : morph.describe(1));
  r.checks.conclusion("factors_psi", exact_equal(Matrix<S>(ce.phi.matrix * r.alpha), u.psi.matrix));
  r.checks.conclusion("section_independent", exact_equal(r.alpha, r.alpha_second),
                      r.sections_differ ? "sections differ by a kernel vector" : "kernel is zero, one section");
  return r;
}

template <class S>
std::vector<std::pair<std::string, CentralExtension<S>>> central_extensions_of(const UceResult<S>& u) {
  const auto& a = u.psi.target;
  std::vector<std::pair<std::string, CentralExtension<S>>> out;
  out.emplace_back("uce", u.extension());
  out.emplace_back("identity", validate_central_extension(identity_morphism(a)));
  for (Index v : {1, 2})
    out.emplace_back("split_abelian" + std::to_string(v),
                     validate_central_extension(fixtures::split_central_extension(a, v)));
  const Index k = u.kernel.dim();
  if (k > 0) {
    Matrix<S> half = u.kernel.basis().topRows((k + 1) / 2);
    auto q = quotient_awb(u.tensor.awb, Subspace<S>::span_rows(half));
    out.emplace_back("uce_quotient",
                     validate_central_extension(AwbMorphism<S>{q.algebra, a, u.psi.matrix * q.space.section}));
  }
  return out;
}

template <class S>
FourTermReport<S> four_term_sequence(const FiniteAwb<S>& a, const Subspace<S>& m_ideal, const HomologyOptions& opts) {
  FourTermReport<S> r;
  auto& c = r.checks;
  c.hypothesis("perfect", is_perfect(a));
  c.hypothesis("ideal", m_ideal.ambient_dim() == a.dim() && is_ideal(a, m_ideal));
  if (!c.hypotheses_hold()) return r;
  auto seq = ideal_tensor_sequence(a, m_ideal);
  if (!c.conclusion("ideal_sequence", seq.ok(), seq.ok() ? "" : seq.checks.describe())) return r;

  const Index dm = m_ideal.dim(), ma = seq.dim_ma;
  const Matrix<S>& inc = seq.m_inclusion;
  const Matrix<S>& sigma = seq.sigma.matrix;
  const Matrix<S>& tau = seq.tau.matrix;
  const Matrix<S>& pi = seq.quotient.projection.matrix;
  Matrix<S> psi_ma = psi_maps(seq.t_ma).psi_m.matrix;
  Matrix<S> psi_am = psi_maps(seq.t_am).psi_n.matrix;
  Matrix<S> psi(dm, psi_ma.cols() + psi_am.cols());
  psi << psi_ma, psi_am;
  Matrix<S> psi_a = psi_maps(seq.t_aa).psi_m.matrix;
  Matrix<S> psi_q = psi_maps(seq.t_qq).psi_m.matrix;

  c.conclusion("square_left", exact_equal(Matrix<S>(psi_a * sigma), Matrix<S>(inc * psi)));
  c.conclusion("square_right", exact_equal(Matrix<S>(pi * psi_a), Matrix<S>(psi_q * tau)));

  Matrix<S> ker_m = kernel_basis(psi_ma).basis_columns();
  Matrix<S> ker_psi = kernel_basis(psi).basis_columns();
  Matrix<S> ker_a = kernel_basis(psi_a).basis_columns();
  Matrix<S> ker_q = kernel_basis(psi_q).basis_columns();
  r.dim_ker_psi_m = ker_m.cols();
  r.dim_ker_psi = ker_psi.cols();
  r.h1_a = ker_a.cols();
  r.h1_q = ker_q.cols();
  r.h1_a_complex = homology(a, 1, opts).dimension;
  r.h1_q_complex = homology(seq.quotient.algebra, 1, opts).dimension;
  c.conclusion("ker_psi_a_is_h1", r.h1_a == r.h1_a_complex, dims_pair("Ker", r.h1_a, "H_1", r.h1_a_complex));
  c.conclusion("ker_psi_q_is_h1", r.h1_q == r.h1_q_complex, dims_pair("Ker", r.h1_q, "H_1", r.h1_q_complex));

  auto im_psi = image(psi);
  auto commutator = commutator_ideal(a, Subspace<S>::full(a.dim()), m_ideal);
  c.conclusion("coker_is_m_mod_commutator", map_subspace(inc, im_psi) == commutator);
  auto coker = quotient_space(dm, im_psi);
  r.coker_dim = coker.dim();

  // Ker psi_M -> Ker psi_A through sigma'
  Matrix<S> v1 = sigma.leftCols(ma) * ker_m;
  Matrix<S> vs = sigma * ker_psi;
  c.conclusion("k1_lands_in_kernel", exact_zero(Matrix<S>(psi_a * v1)) && exact_zero(Matrix<S>(psi_a * vs)));
  r.k1 = coordinates_in(ker_a, v1);
  Matrix<S> ks = coordinates_in(ker_a, vs);

  // Ker psi_A -> Ker psi_{A/M} through tau
  Matrix<S> w = tau * ker_a;
  c.conclusion("k2_lands_in_kernel", exact_zero(Matrix<S>(psi_q * w)));
  r.k2 = coordinates_in(ker_q, w);

  // connecting map: lift through tau, apply psi_A, read in M, project mod Im psi
  auto tau_section = right_inverse(tau);
  if (!c.conclusion("tau_surjective", tau_section.has_value())) return r;
  Matrix<S> lifted = psi_a * (*tau_section) * ker_q;
  auto inc_left = left_inverse(inc);
  Matrix<S> in_m = *inc_left * lifted;
  c.conclusion("delta_lands_in_m", exact_equal(Matrix<S>(inc * in_m), lifted));
  r.delta = coker.projection * in_m;

  r.rank_k1 = rank(r.k1);
  r.rank_k2 = rank(r.k2);
  r.rank_delta = rank(r.delta);
  auto ker_k2 = kernel_basis(r.k2);
  auto ker_delta = kernel_basis(r.delta);
  c.conclusion("exact_at_h1_a", image(r.k1) == ker_k2,
               dims_pair("dim Im", r.rank_k1, "dim Ker", ker_k2.dim()) + " (first map from Ker psi_M)");
  c.conclusion("exact_at_h1_a_snake", image(ks) == ker_k2,
               dims_pair("dim Im", rank(ks), "dim Ker", ker_k2.dim()) + " (first map from Ker psi)");
  c.conclusion("exact_at_h1_q", image(r.k2) == ker_delta, dims_pair("dim Im", r.rank_k2, "dim Ker", ker_delta.dim()));
  c.conclusion("delta_surjective", r.rank_delta == r.coker_dim, dims_pair("rank", r.rank_delta, "coker", r.coker_dim));
  return r;
}

#define AWB_CENTRAL_INSTANTIATE(S)                                                                                  \
  template CheckList check_central_extension<S>(const AwbMorphism<S>&);                                             \
  template CentralExtension<S> validate_central_extension<S>(const AwbMorphism<S>&);                                \
  template UceResult<S> uce<S>(const FiniteAwb<S>&, const HomologyOptions&);                                        \
  template UniversalityReport<S> universality_check<S>(const UceResult<S>&, const CentralExtension<S>&);            \
  template std::vector<std::pair<std::string, CentralExtension<S>>> central_extensions_of<S>(const UceResult<S>&); \
  template FourTermReport<S> four_term_sequence<S>(const FiniteAwb<S>&, const Subspace<S>&, const HomologyOptions&);

AWB_CENTRAL_INSTANTIATE(Rational)
AWB_CENTRAL_INSTANTIATE(ModP)

}  // namespace awb
