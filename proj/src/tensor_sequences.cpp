#include "awb/tensor.hpp"

namespace awb {

namespace {

std::string dims_detail(Index got, Index want) { return std::to_string(got) + " (expected " + std::to_string(want) + ")"; }

template <class S>
bool same_subspace(const Subspace<S>& a, const Subspace<S>& b) {
  return a == b;
}

/// Columns of `section` paired into generators of one block of M (x) N.
template <class S>
void add_block_columns(Matrix<S>& out, Index& col, const TensorProduct<S>& t, TensorKind kind, Orientation o,
                       const Matrix<S>& first, const Matrix<S>& second) {
  for (Index p = 0; p < first.cols(); ++p)
    for (Index q = 0; q < second.cols(); ++q)
      out.col(col++) = pure_tensor(t, Vector<S>(first.col(p)), Vector<S>(second.col(q)), kind, o);
}

}  // namespace

template <class S>
TrivialTensorReport<S> trivial_tensor_check(const FiniteAwb<S>& m, const FiniteAwb<S>& n) {
  TrivialTensorReport<S> r;
  r.tensor = nonabelian_tensor(trivial_mutual_actions(m, n));
  const auto& t = r.tensor;
  auto mab = abelianization(m), nab = abelianization(n);
  r.m_ab = mab.algebra.dim();
  r.n_ab = nab.algebra.dim();
  r.expected_dim = 4 * r.m_ab * r.n_ab;
  r.checks.conclusion("abelian", t.awb.is_abelian());
  r.checks.conclusion("dimension", t.awb.dim() == r.expected_dim, dims_detail(t.awb.dim(), r.expected_dim));

  const Index block_size = m.dim() * n.dim();
  for (Index c : t.quotient.free_columns()) ++r.block_dims[static_cast<std::size_t>(c / block_size)];
  r.expected_block_dims.fill(r.m_ab * r.n_ab);
  std::string detail;
  for (std::size_t b = 0; b < 4; ++b)
    detail += (b ? " " : "") + std::to_string(r.block_dims[b]) + "/" + std::to_string(r.expected_block_dims[b]);
  r.checks.conclusion("blocks", r.block_dims == r.expected_block_dims, detail + " (surviving/expected per block)");

  r.block_map = Matrix<S>::Zero(t.awb.dim(), r.expected_dim);
  Index col = 0;
  const Matrix<S>& sm = mab.space.section;
  const Matrix<S>& sn = nab.space.section;
  add_block_columns(r.block_map, col, t, TensorKind::odot, Orientation::mn, sm, sn);
  add_block_columns(r.block_map, col, t, TensorKind::odot, Orientation::nm, sn, sm);
  add_block_columns(r.block_map, col, t, TensorKind::circledast, Orientation::mn, sm, sn);
  add_block_columns(r.block_map, col, t, TensorKind::circledast, Orientation::nm, sn, sm);
  const bool bijective = r.block_map.rows() == r.block_map.cols() && rank(r.block_map) == r.block_map.rows();
  r.checks.conclusion("block_map_bijective", bijective,
                      "rank " + std::to_string(rank(r.block_map)) + " of " + std::to_string(r.block_map.rows()) + "x" +
                          std::to_string(r.block_map.cols()));
  return r;
}

template <class S>
RightExactnessReport<S> right_exactness_check(const RightExactnessInput<S>& in) {
  RightExactnessReport<S> rep;
  auto& c = rep.checks;
  const auto& n = in.mut2.n();
  bool shapes = in.f.source == in.mut1.m() && in.f.target == in.mut2.m() && in.g.source == in.mut2.m() &&
                in.g.target == in.mut3.m() && in.mut1.n() == n && in.mut3.n() == n;
  c.hypothesis("shapes", shapes);
  if (!shapes) return rep;
  c.hypothesis("f_morphism", check_morphism(in.f).valid());
  c.hypothesis("g_morphism", check_morphism(in.g).valid());
  c.hypothesis("f_injective", is_injective(in.f));
  c.hypothesis("g_surjective", is_surjective(in.g));
  c.hypothesis("exact_at_m2", same_subspace(image(in.f), kernel(in.g)));
  c.hypothesis("compatible_1", check_compatibility(in.mut1).valid());
  c.hypothesis("compatible_2", check_compatibility(in.mut2).valid());
  c.hypothesis("compatible_3", check_compatibility(in.mut3).valid());
  Matrix<S> id = n.identity_matrix();
  c.hypothesis("f_equivariant", check_equivariance(in.f.matrix, id, in.mut1, in.mut2).valid());
  c.hypothesis("g_equivariant", check_equivariance(in.g.matrix, id, in.mut2, in.mut3).valid());
  if (!c.hypotheses_hold()) return rep;

  auto t1 = nonabelian_tensor(in.mut1), t2 = nonabelian_tensor(in.mut2), t3 = nonabelian_tensor(in.mut3);
  rep.dim1 = t1.awb.dim();
  rep.dim2 = t2.awb.dim();
  rep.dim3 = t3.awb.dim();
  auto idn = identity_morphism(n);
  AwbMorphism<S> ft, gt;
  try {
    ft = tensor_functor(in.f, idn, t1, t2);
    gt = tensor_functor(in.g, idn, t2, t3);
  } catch (const VerificationFailure& e) {
    c.conclusion("induced_maps", false, e.what());
    return rep;
  }
  c.conclusion("induced_maps", true);
  rep.rank_f = rank(ft.matrix);
  rep.rank_g = rank(gt.matrix);
  c.conclusion("composite_zero", exact_zero(gt.matrix * ft.matrix));
  c.conclusion("g_tensor_surjective", rep.rank_g == rep.dim3, dims_detail(rep.rank_g, rep.dim3));
  auto im = image(ft.matrix);
  auto ker = kernel(gt);
  c.conclusion("exact_middle", same_subspace(im, ker),
               "dim Im " + std::to_string(im.dim()) + ", dim Ker " + std::to_string(ker.dim()));
  return rep;
}

template <class S>
IdealSequenceReport<S> ideal_tensor_sequence(const FiniteAwb<S>& a, const Subspace<S>& m_ideal) {
  IdealSequenceReport<S> rep;
  auto& c = rep.checks;
  if (!c.hypothesis("ideal", m_ideal.ambient_dim() == a.dim() && is_ideal(a, m_ideal))) return rep;

  auto ma = mutual_actions_from_ideals(a, m_ideal, Subspace<S>::full(a.dim()));
  auto am = mutual_actions_from_ideals(a, Subspace<S>::full(a.dim()), m_ideal);
  auto t_ma = nonabelian_tensor(ma.actions);
  auto t_am = nonabelian_tensor(am.actions);
  auto t_aa = nonabelian_tensor(self_mutual_actions(a));
  auto quo = quotient_awb(a, m_ideal);
  auto t_qq = nonabelian_tensor(self_mutual_actions(quo.algebra));
  rep.dim_ma = t_ma.awb.dim();
  rep.dim_am = t_am.awb.dim();
  rep.dim_aa = t_aa.awb.dim();
  rep.dim_qq = t_qq.awb.dim();
  rep.m_inclusion = ma.m.inclusion.matrix;
  rep.t_ma = t_ma;
  rep.t_am = t_am;
  rep.t_aa = t_aa;
  rep.t_qq = t_qq;
  rep.quotient = quo;

  // The A factor of ma/am is the full subalgebra; its inclusion is the identity.
  auto sigma1 = tensor_functor(AwbMorphism<S>{ma.m.algebra, a, ma.m.inclusion.matrix},
                               AwbMorphism<S>{ma.n.algebra, a, ma.n.inclusion.matrix}, t_ma, t_aa);
  auto sigma2 = tensor_functor(AwbMorphism<S>{am.m.algebra, a, am.m.inclusion.matrix},
                               AwbMorphism<S>{am.n.algebra, a, am.n.inclusion.matrix}, t_am, t_aa);
  auto proj = quo.projection;
  proj.target = quo.algebra;
  rep.tau = tensor_functor(proj, proj, t_aa, t_qq);

  // A (x) M acts on M (x) A through psi onto its M factor and the induced M-action.
  auto psi_am = psi_maps(t_am).psi_n;
  auto by_m = induced_actions(t_ma).by_m;
  // am's copy of M and ma's copy share the canonical basis of the ideal
  const Matrix<S>& psi = psi_am.matrix;
  Matrix<S> ix = t_ma.awb.identity_matrix();
  AwbAction<S> pulled{t_am.awb, t_ma.awb, by_m.ldot.transformed(psi, ix, ix), by_m.rdot.transformed(ix, psi, ix),
                      by_m.lstar.transformed(psi, ix, ix), by_m.rstar.transformed(ix, psi, ix)};
  if (!c.conclusion("semidirect_action", validate_action(pulled).valid())) return rep;
  auto sd = semidirect(pulled);
  Matrix<S> sig(rep.dim_aa, rep.dim_ma + rep.dim_am);
  sig << sigma1.matrix, sigma2.matrix;
  rep.sigma = AwbMorphism<S>{sd.algebra, t_aa.awb, sig};
  c.conclusion("sigma_morphism", check_morphism(rep.sigma).valid());

  rep.image_sigma = image(sig);
  rep.rank_sigma = rep.image_sigma.dim();
  rep.rank_tau = rank(rep.tau.matrix);
  c.conclusion("image_ideal", is_ideal(t_aa.awb, rep.image_sigma));
  c.conclusion("tau_surjective", rep.rank_tau == rep.dim_qq, dims_detail(rep.rank_tau, rep.dim_qq));
  auto ker_tau = kernel(rep.tau);
  c.conclusion("exact_middle", same_subspace(ker_tau, rep.image_sigma),
               "dim Ker tau " + std::to_string(ker_tau.dim()) + ", dim Im sigma " + std::to_string(rep.rank_sigma));

  // tau': (a1 + M) * (a2 + M) -> a1 * a2 + Im sigma through a section of A -> A/M
  auto q_aa = quotient_space(rep.dim_aa, rep.image_sigma);
  const Matrix<S>& lift = quo.space.section;
  const Index dq = quo.algebra.dim();
  Matrix<S> tau_prime_gen(q_aa.dim(), t_qq.generator_dim());
  for (Index g = 0; g < t_qq.generator_dim(); ++g) {
    auto gi = generator_at(dq, dq, g);
    Vector<S> x = lift.col(gi.i), y = lift.col(gi.j);
    tau_prime_gen.col(g) = q_aa.projection * pure_tensor(t_aa, x, y, gi.kind, gi.orientation);
  }
  bool well_defined = true;
  for (const auto& row : t_qq.quotient.relations().rows())
    if (!exact_zero(tau_prime_gen * to_dense(row, t_qq.generator_dim()))) well_defined = false;
  c.conclusion("tau_prime_well_defined", well_defined);
  if (well_defined) {
    Matrix<S> tau_prime(q_aa.dim(), t_qq.awb.dim());
    for (Index k = 0; k < t_qq.awb.dim(); ++k) tau_prime.col(k) = tau_prime_gen.col(t_qq.quotient.lift(k));
    Matrix<S> tau_bar = rep.tau.matrix * q_aa.section;
    bool inverse = exact_equal(tau_bar * tau_prime, Matrix<S>::Identity(rep.dim_qq, rep.dim_qq)) &&
                   exact_equal(tau_prime * tau_bar, Matrix<S>::Identity(q_aa.dim(), q_aa.dim()));
    c.conclusion("tau_prime_inverse", inverse);
  }
  return rep;
}

template <class S>
std::vector<SparseVec<S>> ia_generators(const FiniteAwb<S>& a) {
  const Index d = a.dim(), d2 = d * d;
  const auto& p = a.product_table();
  const auto& b = a.bracket_table();
  const S minus_one = a.scalar(-1);
  auto tens = [&](Index i, Index j) { return i * d + j; };
  auto circ = [&](Index i, Index j) { return d2 + i * d + j; };
  std::vector<SparseVec<S>> out;
  for (Index a1 = 0; a1 < d; ++a1)
    for (Index a2 = 0; a2 < d; ++a2)
      for (Index a3 = 0; a3 < d; ++a3) {
        SparseAccumulator<S> acc(2 * d2);
        // (a1 a2) (x) a3 - a1 (x) (a2 a3)
        for (const auto& [k, v] : p.on_basis(a1, a2)) acc.add(tens(k, a3), v);
        for (const auto& [k, v] : p.on_basis(a2, a3)) acc.add(tens(a1, k), minus_one * v);
        out.push_back(acc.take());
        // [a1,a3] (x) a2 + a1 (x) [a2,a3] - (a1 a2) o a3
        for (const auto& [k, v] : b.on_basis(a1, a3)) acc.add(tens(k, a2), v);
        for (const auto& [k, v] : b.on_basis(a2, a3)) acc.add(tens(a1, k), v);
        for (const auto& [k, v] : p.on_basis(a1, a2)) acc.add(circ(k, a3), minus_one * v);
        out.push_back(acc.take());
      }
  return out;
}

template <class S>
IaQuotient<S> ia_quotient(const FiniteAwb<S>& a) {
  IaQuotient<S> r;
  const Index d = a.dim(), d2 = d * d;
  EchelonBuilder<S> b(2 * d2);
  for (const auto& v : ia_generators(a))
    if (!v.empty()) b.insert(v);
  r.ia = b.subspace();
  r.space = quotient_space(2 * d2, r.ia);
  r.perfect = is_perfect(a);
  if (!r.perfect) return r;

  auto t = nonabelian_tensor(self_mutual_actions(a));
  // a1 (x) a2 -> od(a1, a2) and a1 o a2 -> ca(a1, a2), both in the M N orientation
  Matrix<S> to_gen = Matrix<S>::Zero(t.awb.dim(), 2 * d2);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      to_gen.col(i * d + j) = t.generator({TensorKind::odot, Orientation::mn, i, j});
      to_gen.col(d2 + i * d + j) = t.generator({TensorKind::circledast, Orientation::mn, i, j});
    }
  bool well_defined = exact_zero(to_gen * r.ia.basis_columns());
  r.checks.conclusion("well_defined", well_defined);
  Matrix<S> map = to_gen * r.space.section;
  r.to_tensor = map;
  r.checks.conclusion("bijective", map.rows() == map.cols() && rank(map) == map.rows(),
                      "dim quotient " + std::to_string(map.cols()) + ", dim tensor " + std::to_string(map.rows()));
  // psi_A after the map equals a1 (x) a2 -> a1 a2, a1 o a2 -> [a1, a2]
  auto psi = psi_maps(t).psi_m;
  Matrix<S> eval(d, 2 * d2);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      eval.col(i * d + j) = a.product().on_basis(i, j);
      eval.col(d2 + i * d + j) = a.bracket().on_basis(i, j);
    }
  r.checks.conclusion("psi_matches_evaluation", exact_equal(Matrix<S>(psi.matrix * to_gen), eval));
  return r;
}

#define AWB_TENSOR_SEQ_INSTANTIATE(S)                                                                    \
  template TrivialTensorReport<S> trivial_tensor_check<S>(const FiniteAwb<S>&, const FiniteAwb<S>&);     \
  template RightExactnessReport<S> right_exactness_check<S>(const RightExactnessInput<S>&);              \
  template IdealSequenceReport<S> ideal_tensor_sequence<S>(const FiniteAwb<S>&, const Subspace<S>&);     \
  template std::vector<SparseVec<S>> ia_generators<S>(const FiniteAwb<S>&);                              \
  template IaQuotient<S> ia_quotient<S>(const FiniteAwb<S>&);

AWB_TENSOR_SEQ_INSTANTIATE(Rational)
AWB_TENSOR_SEQ_INSTANTIATE(ModP)

}  // namespace awb
