#include "awb/action.hpp"

namespace awb {

using formula::Equation;
using formula::make_equation;
using formula::Sort;

template <class S>
const BilinearMap<S>& AwbAction<S>::map(int kind) const {
  switch (kind) {
    case 0: return ldot;
    case 1: return rdot;
    case 2: return lstar;
    default: return rstar;
  }
}

const std::vector<Equation>& action_equations() {
  static const std::vector<Equation> eqs = [] {
    const char* table[][2] = {
        {"act.r1c1", "ld(mul(a1,a2),m) = ld(a1,ld(a2,m))"},
        {"act.r2c1", "rd(m,mul(a1,a2)) = rd(rd(m,a1),a2)"},
        {"act.r3c1", "rd(ld(a1,m),a2) = ld(a1,rd(m,a2))"},
        {"act.r4c1", "rd(mul(m1,m2),a) = mul(m1,rd(m2,a))"},
        {"act.r5c1", "ld(a,mul(m1,m2)) = mul(ld(a,m1),m2)"},
        {"act.r6c1", "mul(rd(m1,a),m2) = mul(m1,ld(a,m2))"},
        {"act.r1c2", "rs(ld(a1,m),a2) = ld(a1,rs(m,a2)) + ld(br(a1,a2),m)"},
        {"act.r2c2", "rs(rd(m,a1),a2) = rd(rs(m,a2),a1) + rd(m,br(a1,a2))"},
        {"act.r3c2", "ls(mul(a1,a2),m) = ld(a1,ls(a2,m)) + rd(ls(a1,m),a2)"},
        {"act.r4c2", "br(rd(m1,a),m2) = mul(m1,ls(a,m2)) + rd(br(m1,m2),a)"},
        {"act.r5c2", "br(ld(a,m1),m2) = ld(a,br(m1,m2)) + mul(ls(a,m2),m1)"},
        {"act.r6c2", "rs(mul(m1,m2),a) = mul(m1,rs(m2,a)) + mul(rs(m1,a),m2)"},
    };
    std::vector<Equation> out;
    for (const auto& row : table) out.push_back(make_equation(row[0], row[1]));
    return out;
  }();
  return eqs;
}

namespace {

template <class S>
void require_action_shapes(const AwbAction<S>& a) {
  const Index na = a.actor.dim(), nm = a.actee.dim();
  auto check = [](const BilinearMap<S>& m, Index l, Index r, Index o, const char* what) {
    if (m.left_dim() != l || m.right_dim() != r || m.out_dim() != o)
      throw InputError(std::string("action tensor ") + what + " has the wrong shape");
  };
  check(a.ldot, na, nm, nm, "ldot");
  check(a.rdot, nm, na, nm, "rdot");
  check(a.lstar, na, nm, nm, "lstar");
  check(a.rstar, nm, na, nm, "rstar");
  if (!(a.actor.field() == a.actee.field())) throw InputError("action: actor and actee over different fields");
}

template <class S>
ValidationReport run_equations(const std::vector<Equation>& eqs, const formula::Context<S>& ctx,
                               std::vector<EquationStatus>* status) {
  ValidationReport all;
  for (const auto& eq : eqs) {
    auto r = formula::check_equation(eq, ctx);
    if (status) status->push_back({eq.id, eq.text(), formula::vanishes_identically(eq, ctx), r.checks, r.witnesses.size()});
    all.merge(r);
  }
  return all;
}

}  // namespace

template <class S>
ValidationReport validate_action(const AwbAction<S>& act, std::vector<EquationStatus>* status) {
  require_action_shapes(act);
  ActionTables<S> t(act);
  formula::Context<S> ctx;
  ctx.field = act.actee.field();
  ctx.dims = {act.actee.dim(), 0, act.actor.dim()};
  ctx.product[0] = &act.actee.product_table();
  ctx.bracket[0] = &act.actee.bracket_table();
  ctx.product[2] = &act.actor.product_table();
  ctx.bracket[2] = &act.actor.bracket_table();
  for (int k = 0; k < 4; ++k) ctx.action[2][0][k] = &t.tables[k];
  return run_equations(action_equations(), ctx, status);
}

template <class S>
void require_valid_action(const AwbAction<S>& act, const std::string& what) {
  auto r = validate_action(act);
  if (!r.valid()) throw PreconditionError(what + ": action equations fail\n" + r.describe());
}

template <class S>
AwbAction<S> trivial_action(const FiniteAwb<S>& actor, const FiniteAwb<S>& actee) {
  if (!(actor.field() == actee.field())) throw InputError("trivial_action: field mismatch");
  const Index na = actor.dim(), nm = actee.dim();
  return {actor, actee, BilinearMap<S>(na, nm, nm), BilinearMap<S>(nm, na, nm), BilinearMap<S>(na, nm, nm),
          BilinearMap<S>(nm, na, nm)};
}

namespace {

/// Action of A on M given by left/right operators: actor element x acts
/// through the ambient operations after mapping x by `lift` and m by `incl`,
/// and the result is read back with `coords`.
template <class S>
AwbAction<S> action_through(const FiniteAwb<S>& ambient, const FiniteAwb<S>& actor, const FiniteAwb<S>& actee,
                            const Matrix<S>& lift, const Matrix<S>& incl, const Matrix<S>& coords) {
  AwbAction<S> act{actor, actee, {}, {}, {}, {}};
  act.ldot = ambient.product().transformed(lift, incl, coords);
  act.rdot = ambient.product().transformed(incl, lift, coords);
  act.lstar = ambient.bracket().transformed(lift, incl, coords);
  act.rstar = ambient.bracket().transformed(incl, lift, coords);
  return act;
}

template <class S>
Matrix<S> pivot_coordinates(const FiniteAwb<S>& a, const Subspace<S>& s) {
  Matrix<S> c(s.dim(), a.dim());
  for (Index k = 0; k < s.dim(); ++k)
    for (Index j = 0; j < a.dim(); ++j) c(k, j) = j == s.pivots()[k] ? a.scalar(1) : a.scalar(0);
  return c;
}

}  // namespace

template <class S>
IdealAction<S> action_from_ideal(const FiniteAwb<S>& b, const Subspace<S>& actor_sub, const Subspace<S>& ideal) {
  if (!is_subalgebra(b, actor_sub)) throw PreconditionError("action_from_ideal: actor subspace is not a subalgebra");
  if (!is_ideal(b, ideal)) throw PreconditionError("action_from_ideal: actee subspace is not a two-sided ideal");
  auto a = subalgebra(b, actor_sub, b.name().empty() ? "" : b.name() + "|A");
  auto m = subalgebra(b, ideal, b.name().empty() ? "" : b.name() + "|M");
  auto act = action_through(b, a.algebra, m.algebra, a.inclusion.matrix, m.inclusion.matrix, pivot_coordinates(b, ideal));
  return {a, m, act};
}

template <class S>
AwbAction<S> self_action(const FiniteAwb<S>& a) {
  Matrix<S> id = a.identity_matrix();
  return action_through(a, a, a, id, id, id);
}

template <class S>
AwbAction<S> action_from_hom(const AwbMorphism<S>& f) {
  auto r = check_morphism(f);
  if (!r.valid()) throw PreconditionError("action_from_hom: not a morphism\n" + r.describe());
  Matrix<S> id = f.target.identity_matrix();
  return action_through(f.target, f.source, f.target, f.matrix, id, id);
}

template <class S>
AwbAction<S> action_from_central_surjection(const AwbMorphism<S>& mu) {
  auto r = check_morphism(mu);
  if (!r.valid()) throw PreconditionError("action_from_central_surjection: not a morphism\n" + r.describe());
  if (!is_surjective(mu)) throw PreconditionError("action_from_central_surjection: map is not surjective");
  if (!center(mu.source).contains(kernel(mu)))
    throw PreconditionError("action_from_central_surjection: kernel is not central");
  const auto& m = mu.source;
  Matrix<S> id = m.identity_matrix();
  auto s1 = right_inverse(mu.matrix, PivotOrder::leftmost);
  auto s2 = right_inverse(mu.matrix, PivotOrder::rightmost);
  auto a1 = action_through(m, mu.target, m, *s1, id, id);
  auto a2 = action_through(m, mu.target, m, *s2, id, id);
  if (!(a1 == a2)) throw VerificationFailure("action_from_central_surjection: action depends on the chosen section");
  return a1;
}

template <class S>
Semidirect<S> semidirect(const AwbAction<S>& act) {
  require_action_shapes(act);
  const auto& a = act.actor;
  const auto& m = act.actee;
  const Index nm = m.dim(), na = a.dim(), n = nm + na;
  BilinearMap<S> prod(n, n, n), br(n, n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) prod(i, j, k) = br(i, j, k) = a.scalar(0);
  for (Index i = 0; i < nm; ++i)
    for (Index j = 0; j < nm; ++j)
      for (Index k = 0; k < nm; ++k) {
        prod(i, j, k) = m.product()(i, j, k);
        br(i, j, k) = m.bracket()(i, j, k);
      }
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nm; ++j)
      for (Index k = 0; k < nm; ++k) {
        prod(nm + i, j, k) = act.ldot(i, j, k);
        br(nm + i, j, k) = act.lstar(i, j, k);
        prod(j, nm + i, k) = act.rdot(j, i, k);
        br(j, nm + i, k) = act.rstar(j, i, k);
      }
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < na; ++j)
      for (Index k = 0; k < na; ++k) {
        prod(nm + i, nm + j, nm + k) = a.product()(i, j, k);
        br(nm + i, nm + j, nm + k) = a.bracket()(i, j, k);
      }
  std::string name = m.name().empty() || a.name().empty() ? std::string() : m.name() + "x|" + a.name();
  FiniteAwb<S> sd(a.field(), prod, br, name, Validation::skip);
  auto report = validate_awb(sd);
  if (!report.valid()) throw AxiomError("semidirect product fails the axioms; the input is not an action", report);
  Matrix<S> id = sd.identity_matrix();
  Semidirect<S> out{sd, {m, sd, id.leftCols(nm)}, {sd, a, id.bottomRows(na)}, {a, sd, id.rightCols(na)}};
  for (const auto* f : {&out.inject, &out.project, &out.section}) {
    auto r = check_morphism(*f);
    if (!r.valid()) throw AxiomError("semidirect product: structure map is not a morphism", r);
  }
  return out;
}

template <class S>
AwbAction<S> action_from_split_extension(const AwbMorphism<S>& i, const AwbMorphism<S>& pi, const AwbMorphism<S>& s) {
  for (const auto* f : {&i, &pi, &s}) {
    auto r = check_morphism(*f);
    if (!r.valid()) throw PreconditionError("split extension: map is not a morphism\n" + r.describe());
  }
  if (!is_injective(i)) throw PreconditionError("split extension: i is not injective");
  if (!(kernel(pi) == image(i))) throw PreconditionError("split extension: Ker pi != Im i");
  if (!exact_equal(Matrix<S>(pi.matrix * s.matrix), pi.target.identity_matrix()))
    throw PreconditionError("split extension: pi o s != id");
  auto l = left_inverse(i.matrix);
  return action_through(i.target, s.source, i.source, s.matrix, i.matrix, *l);
}

// ---------------------------------------------------------------------------

const std::vector<Equation>& compatibility_equations() {
  static const std::vector<Equation> eqs = [] {
    const char* table[][2] = {
        {"cmp.r1c1", "rd(m,ld(m2,n2)) = mul(m,rd(m2,n2))"},
        {"cmp.r1c2", "rd(m,rd(n2,m2)) = mul(m,ld(n2,m2))"},
        {"cmp.r2c1", "rd(m,ls(m2,n2)) = mul(m,rs(m2,n2))"},
        {"cmp.r2c2", "rd(m,rs(n2,m2)) = mul(m,ls(n2,m2))"},
        {"cmp.r3c1", "rs(m,ld(m2,n2)) = br(m,rd(m2,n2))"},
        {"cmp.r3c2", "rs(m,rd(n2,m2)) = br(m,ld(n2,m2))"},
        {"cmp.r4c1", "rs(m,ls(m2,n2)) = br(m,rs(m2,n2))"},
        {"cmp.r4c2", "rs(m,rs(n2,m2)) = br(m,ls(n2,m2))"},
        {"cmp.r5c1", "ld(rd(m,n),n2) = mul(ld(m,n),n2)"},
        {"cmp.r5c2", "ld(ld(n,m),n2) = mul(rd(n,m),n2)"},
        {"cmp.r6c1", "ld(rs(m,n),n2) = mul(ls(m,n),n2)"},
        {"cmp.r6c2", "ld(ls(n,m),n2) = mul(rs(n,m),n2)"},
        {"cmp.r7c1", "ls(rd(m,n),n2) = br(ld(m,n),n2)"},
        {"cmp.r7c2", "ls(ld(n,m),n2) = br(rd(n,m),n2)"},
        {"cmp.r8c1", "ls(rs(m,n),n2) = br(ls(m,n),n2)"},
        {"cmp.r8c2", "ls(ls(n,m),n2) = br(rs(n,m),n2)"},
    };
    std::vector<Equation> out;
    for (const auto& row : table) out.push_back(make_equation(row[0], row[1]));
    const std::size_t displayed = out.size();
    for (std::size_t k = 0; k < displayed; ++k) out.push_back(formula::swapped(out[k], out[k].id + ".swap"));
    return out;
  }();
  return eqs;
}

template <class S>
MutualContext<S>::MutualContext(const MutualActions<S>& mut) : mn_(mut.m_on_n), nm_(mut.n_on_m) {
  const auto& m = mut.m();
  const auto& n = mut.n();
  if (!(mut.m_on_n.actor == m) || !(mut.n_on_m.actor == n))
    throw InputError("mutual actions: actor of one action must be the actee of the other");
  require_action_shapes(mut.m_on_n);
  require_action_shapes(mut.n_on_m);
  ctx_.field = m.field();
  ctx_.dims = {m.dim(), n.dim(), 0};
  ctx_.product[0] = &m.product_table();
  ctx_.bracket[0] = &m.bracket_table();
  ctx_.product[1] = &n.product_table();
  ctx_.bracket[1] = &n.bracket_table();
  for (int k = 0; k < 4; ++k) {
    ctx_.action[0][1][k] = &mn_.tables[k];
    ctx_.action[1][0][k] = &nm_.tables[k];
  }
}

template <class S>
ValidationReport check_compatibility(const MutualActions<S>& mut, std::vector<EquationStatus>* status) {
  MutualContext<S> mc(mut);
  return run_equations(compatibility_equations(), mc.context(), status);
}

template <class S>
MutualActions<S> trivial_mutual_actions(const FiniteAwb<S>& m, const FiniteAwb<S>& n) {
  return {trivial_action(m, n), trivial_action(n, m)};
}

template <class S>
IdealPair<S> mutual_actions_from_ideals(const FiniteAwb<S>& b, const Subspace<S>& m, const Subspace<S>& n) {
  if (!is_ideal(b, m) || !is_ideal(b, n)) throw PreconditionError("mutual actions: both subspaces must be ideals");
  auto ms = subalgebra(b, m, b.name().empty() ? "" : b.name() + "|M");
  auto ns = subalgebra(b, n, b.name().empty() ? "" : b.name() + "|N");
  auto m_on_n = action_through(b, ms.algebra, ns.algebra, ms.inclusion.matrix, ns.inclusion.matrix, pivot_coordinates(b, n));
  auto n_on_m = action_through(b, ns.algebra, ms.algebra, ns.inclusion.matrix, ms.inclusion.matrix, pivot_coordinates(b, m));
  return {ms, ns, {m_on_n, n_on_m}};
}

template <class S>
MutualActions<S> self_mutual_actions(const FiniteAwb<S>& a) {
  auto s = self_action(a);
  return {s, s};
}

template <class S>
ValidationReport check_associative_action(const AssociativeAction<S>& act) {
  // The first column of the action equations mentions products only; it is
  // exactly the associative action axioms.
  AwbAction<S> lifted = lift_associative_action(act, LiftMode::trivial_bracket);
  ActionTables<S> t(lifted);
  formula::Context<S> ctx;
  ctx.field = lifted.actee.field();
  ctx.dims = {lifted.actee.dim(), 0, lifted.actor.dim()};
  ctx.product[0] = &lifted.actee.product_table();
  ctx.bracket[0] = &lifted.actee.bracket_table();
  ctx.product[2] = &lifted.actor.product_table();
  ctx.bracket[2] = &lifted.actor.bracket_table();
  for (int k = 0; k < 4; ++k) ctx.action[2][0][k] = &t.tables[k];
  std::vector<Equation> first_column(action_equations().begin(), action_equations().begin() + 6);
  return run_equations(first_column, ctx, nullptr);
}

template <class S>
AwbAction<S> lift_associative_action(const AssociativeAction<S>& act, LiftMode mode) {
  FiniteAwb<S> actor = mode == LiftMode::tautological ? tautological(act.actor) : with_trivial_bracket(act.actor);
  FiniteAwb<S> actee = mode == LiftMode::tautological ? tautological(act.actee) : with_trivial_bracket(act.actee);
  AwbAction<S> out = trivial_action(actor, actee);
  out.ldot = act.left;
  out.rdot = act.right;
  if (mode == LiftMode::tautological) {
    const Index na = actor.dim(), nm = actee.dim();
    for (Index i = 0; i < na; ++i)
      for (Index j = 0; j < nm; ++j)
        for (Index k = 0; k < nm; ++k) {
          out.lstar(i, j, k) = act.left(i, j, k) - act.right(j, i, k);
          out.rstar(j, i, k) = act.right(j, i, k) - act.left(i, j, k);
        }
  }
  require_action_shapes(out);
  return out;
}

#define AWB_ACTION_INSTANTIATE(S)                                                                                 \
  template struct AwbAction<S>;                                                                                   \
  template ValidationReport validate_action<S>(const AwbAction<S>&, std::vector<EquationStatus>*);                \
  template void require_valid_action<S>(const AwbAction<S>&, const std::string&);                                 \
  template AwbAction<S> trivial_action<S>(const FiniteAwb<S>&, const FiniteAwb<S>&);                              \
  template IdealAction<S> action_from_ideal<S>(const FiniteAwb<S>&, const Subspace<S>&, const Subspace<S>&);      \
  template AwbAction<S> self_action<S>(const FiniteAwb<S>&);                                                      \
  template AwbAction<S> action_from_hom<S>(const AwbMorphism<S>&);                                                \
  template AwbAction<S> action_from_central_surjection<S>(const AwbMorphism<S>&);                                 \
  template Semidirect<S> semidirect<S>(const AwbAction<S>&);                                                      \
  template AwbAction<S> action_from_split_extension<S>(const AwbMorphism<S>&, const AwbMorphism<S>&,              \
                                                       const AwbMorphism<S>&);                                    \
  template class MutualContext<S>;                                                                                \
  template ValidationReport check_compatibility<S>(const MutualActions<S>&, std::vector<EquationStatus>*);        \
  template MutualActions<S> trivial_mutual_actions<S>(const FiniteAwb<S>&, const FiniteAwb<S>&);                  \
  template IdealPair<S> mutual_actions_from_ideals<S>(const FiniteAwb<S>&, const Subspace<S>&, const Subspace<S>&); \
  template MutualActions<S> self_mutual_actions<S>(const FiniteAwb<S>&);                                          \
  template ValidationReport check_associative_action<S>(const AssociativeAction<S>&);                             \
  template AwbAction<S> lift_associative_action<S>(const AssociativeAction<S>&, LiftMode);

AWB_ACTION_INSTANTIATE(Rational)
AWB_ACTION_INSTANTIATE(ModP)

}  // namespace awb
