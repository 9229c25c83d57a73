#include "awb/xmod.hpp"

namespace awb {

namespace {

template <class S>
void compare(ValidationReport& r, const std::string& check, std::vector<Index> idx, const Vector<S>& lhs,
             const Vector<S>& rhs) {
  ++r.checks;
  if (!exact_equal(lhs, rhs)) r.witnesses.push_back({check, std::move(idx), format_vector(lhs), format_vector(rhs)});
}

template <class S>
void compare_zero(ValidationReport& r, const std::string& check, std::vector<Index> idx, const Vector<S>& v) {
  ++r.checks;
  if (!exact_zero(v)) r.witnesses.push_back({check, std::move(idx), format_vector(v), "0"});
}

/// Merges a report, renaming every witness to `prefix.<check>`.
void merge_prefixed(ValidationReport& into, ValidationReport from, const std::string& prefix) {
  for (auto& w : from.witnesses) w.check = prefix + "." + w.check;
  into.merge(from);
}

template <class S>
ValidationReport morphism_report(const FiniteAwb<S>& source, const FiniteAwb<S>& target, const Matrix<S>& m,
                                 const std::string& prefix) {
  ValidationReport r;
  if (m.rows() != target.dim() || m.cols() != source.dim()) {
    r.witnesses.push_back({prefix + ".shape", {m.rows(), m.cols()}, "", ""});
    return r;
  }
  merge_prefixed(r, check_morphism(AwbMorphism<S>{source, target, m}), prefix);
  return r;
}

template <class S>
void require_xmod_shapes(const CrossedModule<S>& xm) {
  if (!(xm.act.actee == xm.m()) || !(xm.act.actor == xm.a()))
    throw InputError("crossed module: the action must be of the target of mu on its source");
  if (xm.mu.matrix.rows() != xm.a().dim() || xm.mu.matrix.cols() != xm.m().dim())
    throw InputError("crossed module: mu has the wrong shape");
}

}  // namespace

template <class S>
ValidationReport validate_xmod(const CrossedModule<S>& xm) {
  require_xmod_shapes(xm);
  const auto& m = xm.m();
  const auto& a = xm.a();
  const auto& act = xm.act;
  const Matrix<S>& mu = xm.mu.matrix;
  ValidationReport r;
  for (Index i = 0; i < m.dim(); ++i) {
    Vector<S> ei = m.basis_vector(i);
    Vector<S> mi = mu.col(i);
    for (Index j = 0; j < a.dim(); ++j) {
      Vector<S> aj = a.basis_vector(j);
      compare(r, "cm1.rdot", {i, j}, Vector<S>(mu * act.rdot.on_basis(i, j)), a.mul(mi, aj));
      compare(r, "cm1.ldot", {i, j}, Vector<S>(mu * act.ldot.on_basis(j, i)), a.mul(aj, mi));
      compare(r, "cm1.rstar", {i, j}, Vector<S>(mu * act.rstar.on_basis(i, j)), a.br(mi, aj));
      compare(r, "cm1.lstar", {i, j}, Vector<S>(mu * act.lstar.on_basis(j, i)), a.br(aj, mi));
    }
    for (Index k = 0; k < m.dim(); ++k) {
      Vector<S> ek = m.basis_vector(k);
      Vector<S> mk = mu.col(k);
      Vector<S> prod = m.product().on_basis(i, k);
      Vector<S> brk = m.bracket().on_basis(i, k);
      compare(r, "cm2.ldot", {i, k}, act.ldot.apply(mi, ek), prod);
      compare(r, "cm2.rdot", {i, k}, act.rdot.apply(ei, mk), prod);
      compare(r, "cm2.lstar", {i, k}, act.lstar.apply(mi, ek), brk);
      compare(r, "cm2.rstar", {i, k}, act.rstar.apply(ei, mk), brk);
    }
  }
  return r;
}

template <class S>
void require_valid_xmod(const CrossedModule<S>& xm, const std::string& what) {
  require_xmod_shapes(xm);
  auto mr = check_morphism(xm.mu);
  if (!mr.valid()) throw PreconditionError(what + ": mu is not a morphism\n" + mr.describe());
  require_valid_action(xm.act, what);
  auto r = validate_xmod(xm);
  if (!r.valid()) throw AxiomError(what + ": crossed module identities fail", r);
}

template <class S>
XModStructure<S> xmod_structure(const CrossedModule<S>& xm) {
  require_xmod_shapes(xm);
  const auto& m = xm.m();
  const auto& a = xm.a();
  XModStructure<S> out;
  out.kernel = kernel(xm.mu);
  out.image = image(xm.mu);
  out.kernel_central = center(m).contains(out.kernel);
  out.image_ideal = is_ideal(a, out.image);
  out.image_acts_trivially = true;
  for (Index u = 0; u < out.image.dim() && out.image_acts_trivially; ++u) {
    Vector<S> x = out.image.basis_vector(u);
    for (Index k = 0; k < out.kernel.dim(); ++k) {
      Vector<S> y = out.kernel.basis_vector(k);
      if (!exact_zero(xm.act.ldot.apply(x, y)) || !exact_zero(xm.act.rdot.apply(y, x)) ||
          !exact_zero(xm.act.lstar.apply(x, y)) || !exact_zero(xm.act.rstar.apply(y, x))) {
        out.image_acts_trivially = false;
        break;
      }
    }
  }
  if (!out.ok()) return out;
  auto k = subalgebra(m, out.kernel, m.name().empty() ? "" : "Ker(" + m.name() + ")");
  auto q = quotient_awb(a, out.image);
  const Matrix<S>& lift = q.space.section;
  const Matrix<S>& incl = k.inclusion.matrix;
  Matrix<S> coords = pivot_selector(out.kernel);
  AwbAction<S> rep{q.algebra, k.algebra, {}, {}, {}, {}};
  rep.ldot = xm.act.ldot.transformed(lift, incl, coords);
  rep.rdot = xm.act.rdot.transformed(incl, lift, coords);
  rep.lstar = xm.act.lstar.transformed(lift, incl, coords);
  rep.rstar = xm.act.rstar.transformed(incl, lift, coords);
  out.kernel_representation = std::move(rep);
  return out;
}

template <class S>
SemidirectHoms<S> semidirect_homs(const CrossedModule<S>& xm) {
  require_valid_xmod(xm, "semidirect_homs");
  const auto& m = xm.m();
  const auto& a = xm.a();
  const Index nm = m.dim(), na = a.dim();
  auto m_by_a = semidirect(xm.act);
  auto a_by_a = semidirect(self_action(a));
  auto m_by_m = semidirect(self_action(m));
  const S zero = a.scalar(0), one = a.scalar(1);

  Matrix<S> mu_id = Matrix<S>::Constant(2 * na, nm + na, zero);
  mu_id.topLeftCorner(na, nm) = xm.mu.matrix;
  for (Index j = 0; j < na; ++j) mu_id(na + j, nm + j) = one;

  Matrix<S> id_mu = Matrix<S>::Constant(nm + na, 2 * nm, zero);
  for (Index j = 0; j < nm; ++j) id_mu(j, j) = one;
  id_mu.bottomRightCorner(na, nm) = xm.mu.matrix;

  Matrix<S> phi = Matrix<S>::Constant(nm + na, nm + na, zero);
  for (Index j = 0; j < nm; ++j) phi(j, j) = -one;
  phi.bottomLeftCorner(na, nm) = xm.mu.matrix;
  for (Index j = 0; j < na; ++j) phi(nm + j, nm + j) = one;

  SemidirectHoms<S> out{m_by_a,
                        a_by_a,
                        m_by_m,
                        {m_by_a.algebra, a_by_a.algebra, mu_id},
                        {m_by_m.algebra, m_by_a.algebra, id_mu},
                        {m_by_a.algebra, m_by_a.algebra, phi},
                        {}};
  merge_prefixed(out.report, check_morphism(out.mu_id), "mu_id");
  merge_prefixed(out.report, check_morphism(out.id_mu), "id_mu");
  merge_prefixed(out.report, check_morphism(out.phi), "phi");
  return out;
}

// ---------------------------------------------------------------------------

template <class S>
ValidationReport validate_cat1(const Cat1Awb<S>& c) {
  const auto& r = c.r;
  const Index n = r.dim();
  if (c.p.ambient_dim() != n || c.s.rows() != n || c.s.cols() != n || c.t.rows() != n || c.t.cols() != n)
    throw InputError("cat1: s, t and P must live in R");
  ValidationReport rep;
  merge_prefixed(rep, check_morphism(AwbMorphism<S>{r, r, c.s}), "s_morphism");
  merge_prefixed(rep, check_morphism(AwbMorphism<S>{r, r, c.t}), "t_morphism");
  ++rep.checks;
  if (!is_subalgebra(r, c.p)) rep.witnesses.push_back({"p_subalgebra", {}, "", ""});
  for (Index i = 0; i < n; ++i) {
    for (const auto& [name, f] : {std::pair<const char*, const Matrix<S>*>{"s_image", &c.s}, {"t_image", &c.t}}) {
      ++rep.checks;
      Vector<S> v = f->col(i);
      if (!c.p.contains(v)) rep.witnesses.push_back({name, {i}, format_vector(v), "in P"});
    }
  }
  for (Index k = 0; k < c.p.dim(); ++k) {
    Vector<S> p = c.p.basis_vector(k);
    compare(rep, "s_retract", {k}, Vector<S>(c.s * p), p);
    compare(rep, "t_retract", {k}, Vector<S>(c.t * p), p);
  }
  auto ks = kernel_basis(c.s);
  auto kt = kernel_basis(c.t);
  for (Index u = 0; u < ks.dim(); ++u) {
    Vector<S> x = ks.basis_vector(u);
    for (Index v = 0; v < kt.dim(); ++v) {
      Vector<S> y = kt.basis_vector(v);
      compare_zero(rep, "ker_product", {u, v}, r.mul(x, y));
      compare_zero(rep, "ker_product", {u, v}, r.mul(y, x));
      compare_zero(rep, "ker_bracket", {u, v}, r.br(x, y));
      compare_zero(rep, "ker_bracket", {u, v}, r.br(y, x));
    }
  }
  return rep;
}

template <class S>
Cat1ToXMod<S> cat1_to_xmod(const Cat1Awb<S>& c) {
  auto rep = validate_cat1(c);
  if (!rep.valid()) throw PreconditionError("cat1_to_xmod: input is not a cat1 structure\n" + rep.describe());
  auto ks = kernel_basis(c.s);
  auto ia = action_from_ideal(c.r, c.p, ks);
  Matrix<S> mu = pivot_selector(c.p) * c.t * ia.actee.inclusion.matrix;
  CrossedModule<S> xm{{ia.actee.algebra, ia.actor.algebra, mu}, ia.action};
  auto r = check_morphism(xm.mu);
  if (!r.valid()) throw VerificationFailure("cat1_to_xmod: restriction of t is not a morphism\n" + r.describe());
  auto v = validate_xmod(xm);
  if (!v.valid()) throw AxiomError("cat1_to_xmod: result is not a crossed module", v);
  return {xm, ia.actee, ia.actor};
}

template <class S>
XModToCat1<S> xmod_to_cat1(const CrossedModule<S>& xm) {
  require_valid_xmod(xm, "xmod_to_cat1");
  auto sd = semidirect(xm.act);
  const Index nm = xm.m().dim();
  Matrix<S> proj_m = sd.algebra.identity_matrix().topRows(nm);
  Matrix<S> s = sd.section.matrix * sd.project.matrix;
  Matrix<S> t = sd.section.matrix * (xm.mu.matrix * proj_m + sd.project.matrix);
  Cat1Awb<S> c{sd.algebra, image(sd.section.matrix), s, t};
  auto rep = validate_cat1(c);
  if (!rep.valid()) throw AxiomError("xmod_to_cat1: result is not a cat1 structure", rep);
  return {c, sd};
}

// ---------------------------------------------------------------------------

template <class S>
ValidationReport check_xmod_morphism(const XModMorphism<S>& f) {
  const auto& x = f.source;
  const auto& y = f.target;
  ValidationReport r = morphism_report(x.m(), y.m(), f.alpha, "alpha_morphism");
  r.merge(morphism_report(x.a(), y.a(), f.beta, "beta_morphism"));
  if (!r.valid()) return r;
  Matrix<S> lhs = f.beta * x.mu.matrix, rhs = y.mu.matrix * f.alpha;
  for (Index i = 0; i < x.m().dim(); ++i) compare(r, "commutes", {i}, Vector<S>(lhs.col(i)), Vector<S>(rhs.col(i)));
  for (Index j = 0; j < x.a().dim(); ++j) {
    Vector<S> bj = f.beta.col(j);
    for (Index i = 0; i < x.m().dim(); ++i) {
      Vector<S> ai = f.alpha.col(i);
      compare(r, "equivariant.ldot", {j, i}, Vector<S>(f.alpha * x.act.ldot.on_basis(j, i)), y.act.ldot.apply(bj, ai));
      compare(r, "equivariant.rdot", {i, j}, Vector<S>(f.alpha * x.act.rdot.on_basis(i, j)), y.act.rdot.apply(ai, bj));
      compare(r, "equivariant.lstar", {j, i}, Vector<S>(f.alpha * x.act.lstar.on_basis(j, i)),
              y.act.lstar.apply(bj, ai));
      compare(r, "equivariant.rstar", {i, j}, Vector<S>(f.alpha * x.act.rstar.on_basis(i, j)),
              y.act.rstar.apply(ai, bj));
    }
  }
  return r;
}

template <class S>
ValidationReport check_cat1_morphism(const Cat1Awb<S>& source, const Cat1Awb<S>& target, const Matrix<S>& f) {
  ValidationReport r = morphism_report(source.r, target.r, f, "f_morphism");
  if (!r.valid()) return r;
  for (Index k = 0; k < source.p.dim(); ++k) {
    ++r.checks;
    Vector<S> v = f * source.p.basis_vector(k);
    if (!target.p.contains(v)) r.witnesses.push_back({"f_preserves_p", {k}, format_vector(v), "in P'"});
  }
  Matrix<S> sf = target.s * f, fs = f * source.s;
  Matrix<S> tf = target.t * f, ft = f * source.t;
  for (Index i = 0; i < source.r.dim(); ++i) {
    compare(r, "s_commutes", {i}, Vector<S>(sf.col(i)), Vector<S>(fs.col(i)));
    compare(r, "t_commutes", {i}, Vector<S>(tf.col(i)), Vector<S>(ft.col(i)));
  }
  return r;
}

template <class S>
XModRoundTrip<S> xmod_roundtrip(const CrossedModule<S>& xm) {
  auto c = xmod_to_cat1(xm);
  auto back = cat1_to_xmod(c.cat1);
  Matrix<S> alpha = pivot_selector(back.kernel_s.subspace) * c.semidirect.inject.matrix;
  Matrix<S> beta = pivot_selector(back.p.subspace) * c.semidirect.section.matrix;
  XModRoundTrip<S> out{back.xmod, {xm, back.xmod, alpha, beta}, {}, false};
  out.report = check_xmod_morphism(out.iso);
  out.invertible = inverse(alpha).has_value() && inverse(beta).has_value();
  return out;
}

template <class S>
Cat1RoundTrip<S> cat1_roundtrip(const Cat1Awb<S>& c) {
  auto x = cat1_to_xmod(c);
  auto back = xmod_to_cat1(x.xmod);
  const Index k = x.kernel_s.subspace.dim(), p = x.p.subspace.dim();
  Matrix<S> iso(c.r.dim(), k + p);
  iso << x.kernel_s.inclusion.matrix, x.p.inclusion.matrix;
  Cat1RoundTrip<S> out{back.cat1, iso, {}, false};
  out.report = check_cat1_morphism(back.cat1, c, iso);
  out.invertible = inverse(iso).has_value();
  return out;
}

// ---------------------------------------------------------------------------

template <class S>
CrossedModule<S> lift_associative_xmod(const AssociativeCrossedModule<S>& xm, LiftMode mode) {
  auto act = lift_associative_action(xm.act, mode);
  if (xm.mu.rows() != act.actor.dim() || xm.mu.cols() != act.actee.dim())
    throw InputError("lift_associative_xmod: mu has the wrong shape");
  return {{act.actee, act.actor, xm.mu}, act};
}

template <class S>
CrossedModule<S> ideal_inclusion_xmod(const FiniteAwb<S>& a, const Subspace<S>& ideal) {
  auto ia = action_from_ideal(a, Subspace<S>::full(a.dim()), ideal);
  ia.action.actor = a;
  return {{ia.actee.algebra, a, ia.actee.inclusion.matrix}, ia.action};
}

template <class S>
CrossedModule<S> representation_xmod(const AwbAction<S>& rep) {
  if (!rep.actee.is_abelian()) throw PreconditionError("representation_xmod: the module must be abelian");
  return {zero_morphism(rep.actee, rep.actor), rep};
}

template <class S>
CrossedModule<S> central_extension_xmod(const AwbMorphism<S>& mu) {
  return {mu, action_from_central_surjection(mu)};
}

#define AWB_XMOD_INSTANTIATE(S)                                                                                   \
  template ValidationReport validate_xmod<S>(const CrossedModule<S>&);                                            \
  template void require_valid_xmod<S>(const CrossedModule<S>&, const std::string&);                               \
  template XModStructure<S> xmod_structure<S>(const CrossedModule<S>&);                                           \
  template SemidirectHoms<S> semidirect_homs<S>(const CrossedModule<S>&);                                         \
  template ValidationReport validate_cat1<S>(const Cat1Awb<S>&);                                                  \
  template Cat1ToXMod<S> cat1_to_xmod<S>(const Cat1Awb<S>&);                                                      \
  template XModToCat1<S> xmod_to_cat1<S>(const CrossedModule<S>&);                                                \
  template ValidationReport check_xmod_morphism<S>(const XModMorphism<S>&);                                       \
  template ValidationReport check_cat1_morphism<S>(const Cat1Awb<S>&, const Cat1Awb<S>&, const Matrix<S>&);       \
  template XModRoundTrip<S> xmod_roundtrip<S>(const CrossedModule<S>&);                                           \
  template Cat1RoundTrip<S> cat1_roundtrip<S>(const Cat1Awb<S>&);                                                 \
  template CrossedModule<S> lift_associative_xmod<S>(const AssociativeCrossedModule<S>&, LiftMode);               \
  template CrossedModule<S> ideal_inclusion_xmod<S>(const FiniteAwb<S>&, const Subspace<S>&);                     \
  template CrossedModule<S> representation_xmod<S>(const AwbAction<S>&);                                          \
  template CrossedModule<S> central_extension_xmod<S>(const AwbMorphism<S>&);

AWB_XMOD_INSTANTIATE(Rational)
AWB_XMOD_INSTANTIATE(ModP)

}  // namespace awb
