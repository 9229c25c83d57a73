#include "awb/tensor.hpp"

#include <set>

namespace awb {

using formula::Equation;
using formula::Op;
using formula::Sort;

Index flat_generator(Index dim_m, Index dim_n, const TensorGeneratorIndex& g) {
  return formula::generator_index(dim_m, dim_n, g.kind == TensorKind::odot ? Op::od : Op::ca,
                                  g.orientation == Orientation::mn, g.i, g.j);
}

TensorGeneratorIndex generator_at(Index dim_m, Index dim_n, Index flat) {
  const Index block_size = dim_m * dim_n;
  if (block_size == 0 || flat < 0 || flat >= 4 * block_size) throw DimensionError("generator index out of range");
  const Index block = flat / block_size, r = flat % block_size;
  TensorGeneratorIndex g;
  g.kind = block >= 2 ? TensorKind::circledast : TensorKind::odot;
  g.orientation = block % 2 == 0 ? Orientation::mn : Orientation::nm;
  const Index width = g.orientation == Orientation::mn ? dim_n : dim_m;
  g.i = r / width;
  g.j = r % width;
  return g;
}

std::string generator_name(const TensorGeneratorIndex& g) {
  const bool mn = g.orientation == Orientation::mn;
  return std::string(g.kind == TensorKind::odot ? "od(" : "ca(") + (mn ? "m" : "n") + std::to_string(g.i) + "," +
         (mn ? "n" : "m") + std::to_string(g.j) + ")";
}

// ---------------------------------------------------------------------------
// Tables

namespace {

struct FamilyTable {
  std::vector<Equation> families;
  TensorFamilyCounts counts;
};

std::string family_key(const Equation& e) {
  std::string l = formula::to_string(e.lhs), r = formula::to_string(e.rhs);
  if (r < l) std::swap(l, r);
  return l + " = " + r;
}

const FamilyTable& family_table() {
  static const FamilyTable table = [] {
    // st stands for both od and ca
    const char* interchange[][2] = {
        {"rel.r1c1", "st(rd(m,n),ld(m2,n2)) = st(ld(m,n),rd(m2,n2))"},
        {"rel.r1c2", "st(rd(m,n),rd(n2,m2)) = st(ld(m,n),ld(n2,m2))"},
        {"rel.r2c1", "st(ld(n,m),rd(n2,m2)) = st(rd(n,m),ld(n2,m2))"},
        {"rel.r2c2", "st(ld(n,m),ld(m2,n2)) = st(rd(n,m),rd(m2,n2))"},
        {"rel.r3c1", "st(rd(m,n),ls(m2,n2)) = st(ld(m,n),rs(m2,n2))"},
        {"rel.r3c2", "st(rd(m,n),rs(n2,m2)) = st(ld(m,n),ls(n2,m2))"},
        {"rel.r4c1", "st(ld(n,m),ls(m2,n2)) = st(rd(n,m),rs(m2,n2))"},
        {"rel.r4c2", "st(ld(n,m),rs(n2,m2)) = st(rd(n,m),ls(n2,m2))"},
        {"rel.r5c1", "st(rs(m,n),ld(m2,n2)) = st(ls(m,n),rd(m2,n2))"},
        {"rel.r5c2", "st(rs(m,n),rd(n2,m2)) = st(ls(m,n),ld(n2,m2))"},
        {"rel.r6c1", "st(ls(n,m),ld(m2,n2)) = st(rs(n,m),rd(m2,n2))"},
        {"rel.r6c2", "st(ls(n,m),rd(n2,m2)) = st(rs(n,m),ld(n2,m2))"},
        {"rel.r7c1", "st(rs(m,n),ls(m2,n2)) = st(ls(m,n),rs(m2,n2))"},
        {"rel.r7c2", "st(rs(m,n),rs(n2,m2)) = st(ls(m,n),ls(n2,m2))"},
        {"rel.r8c1", "st(ls(n,m),ls(m2,n2)) = st(rs(n,m),rs(m2,n2))"},
        {"rel.r8c2", "st(ls(n,m),rs(n2,m2)) = st(rs(n,m),ls(n2,m2))"},
    };
    const char* others[][2] = {
        {"rel.r9c1", "od(mul(m1,m2),n) = od(m1,ld(m2,n))"},
        {"rel.r9c2", "od(n,mul(m1,m2)) = od(rd(n,m1),m2)"},
        {"rel.r10c1", "ca(mul(m1,m2),n) = od(m1,ls(m2,n)) + od(ls(m1,n),m2)"},
        {"rel.r11c1", "ca(ld(m1,n),m2) = od(m1,rs(n,m2)) + od(br(m1,m2),n)"},
        {"rel.r12c1", "ca(rd(n,m1),m2) = od(rs(n,m2),m1) + od(n,br(m1,m2))"},
        {"rel.r13c1", "od(ld(m1,n),m2) = od(m1,rd(n,m2))"},
    };
    FamilyTable t;
    for (const auto& row : interchange) {
      auto e = formula::make_equation(row[0], row[1]);
      t.families.push_back(formula::with_star(e, Op::od, std::string(row[0]) + ".od"));
      t.families.push_back(formula::with_star(e, Op::ca, std::string(row[0]) + ".ca"));
    }
    for (const auto& row : others) t.families.push_back(formula::make_equation(row[0], row[1]));
    t.counts.displayed_lines = std::size(interchange) + std::size(others);
    t.counts.displayed_families = t.families.size();
    std::set<std::string> seen;
    for (const auto& e : t.families) seen.insert(family_key(e));
    const std::size_t displayed = t.families.size();
    for (std::size_t k = 0; k < displayed; ++k) {
      auto s = formula::swapped(t.families[k], t.families[k].id + ".swap");
      ++t.counts.swapped_generated;
      if (seen.insert(family_key(s)).second) {
        t.families.push_back(std::move(s));
        ++t.counts.swapped_new;
      }
    }
    t.counts.total = t.families.size();
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<Equation>& tensor_relation_families() { return family_table().families; }
const TensorFamilyCounts& tensor_family_counts() { return family_table().counts; }

const std::vector<StructureRule>& tensor_structure_rules() {
  static const std::vector<StructureRule> rules = {
      {"od(m,n)", "od(m2,n2)", "od(rd(m,n),ld(m2,n2))", "ca(rd(m,n),ld(m2,n2))"},
      {"od(m,n)", "od(n2,m2)", "od(rd(m,n),rd(n2,m2))", "ca(rd(m,n),rd(n2,m2))"},
      {"od(n,m)", "od(m2,n2)", "od(ld(n,m),ld(m2,n2))", "ca(ld(n,m),ld(m2,n2))"},
      {"od(n,m)", "od(n2,m2)", "od(ld(n,m),rd(n2,m2))", "ca(ld(n,m),rd(n2,m2))"},
      {"od(m,n)", "ca(m2,n2)", "od(rd(m,n),ls(m2,n2))", "ca(rd(m,n),ls(m2,n2))"},
      {"od(m,n)", "ca(n2,m2)", "od(rd(m,n),rs(n2,m2))", "ca(rd(m,n),rs(n2,m2))"},
      // the printed right factor m'^{*n'} lies in M; the N-element ^{m'*}n' is meant
      {"od(n,m)", "ca(m2,n2)", "od(ld(n,m),ls(m2,n2))", "ca(ld(n,m),ls(m2,n2))"},
      {"od(n,m)", "ca(n2,m2)", "od(ld(n,m),rs(n2,m2))", "ca(ld(n,m),rs(n2,m2))"},
      {"ca(m,n)", "od(m2,n2)", "od(rs(m,n),ld(m2,n2))", "ca(rs(m,n),ld(m2,n2))"},
      {"ca(m,n)", "od(n2,m2)", "od(rs(m,n),rd(n2,m2))", "ca(rs(m,n),rd(n2,m2))"},
      {"ca(n,m)", "od(m2,n2)", "od(ls(n,m),ld(m2,n2))", "ca(ls(n,m),ld(m2,n2))"},
      {"ca(n,m)", "od(n2,m2)", "od(ls(n,m),rd(n2,m2))", "ca(ls(n,m),rd(n2,m2))"},
      {"ca(m,n)", "ca(m2,n2)", "od(rs(m,n),ls(m2,n2))", "ca(rs(m,n),ls(m2,n2))"},
      {"ca(m,n)", "ca(n2,m2)", "od(rs(m,n),rs(n2,m2))", "ca(rs(m,n),rs(n2,m2))"},
      {"ca(n,m)", "ca(m2,n2)", "od(ls(n,m),ls(m2,n2))", "ca(ls(n,m),ls(m2,n2))"},
      {"ca(n,m)", "ca(n2,m2)", "od(ls(n,m),rs(n2,m2))", "ca(ls(n,m),rs(n2,m2))"},
  };
  return rules;
}

const std::vector<ActionRule>& tensor_action_rules(Sort actor) {
  static const std::vector<ActionRule> by_m = {
      {"od(m2,n2)", {"od(m,ld(m2,n2))", "od(ld(m2,n2),m)", "ca(m,ld(m2,n2))", "ca(ld(m2,n2),m)"}},
      {"od(n2,m2)", {"od(m,rd(n2,m2))", "od(rd(n2,m2),m)", "ca(m,rd(n2,m2))", "ca(rd(n2,m2),m)"}},
      {"ca(m2,n2)", {"od(m,ls(m2,n2))", "od(ls(m2,n2),m)", "ca(m,ls(m2,n2))", "ca(ls(m2,n2),m)"}},
      {"ca(n2,m2)", {"od(m,rs(n2,m2))", "od(rs(n2,m2),m)", "ca(m,rs(n2,m2))", "ca(rs(n2,m2),m)"}},
  };
  static const std::vector<ActionRule> by_n = {
      {"od(m2,n2)", {"od(n,rd(m2,n2))", "od(rd(m2,n2),n)", "ca(n,rd(m2,n2))", "ca(rd(m2,n2),n)"}},
      {"od(n2,m2)", {"od(n,ld(n2,m2))", "od(ld(n2,m2),n)", "ca(n,ld(n2,m2))", "ca(ld(n2,m2),n)"}},
      {"ca(m2,n2)", {"od(n,rs(m2,n2))", "od(rs(m2,n2),n)", "ca(n,rs(m2,n2))", "ca(rs(m2,n2),n)"}},
      {"ca(n2,m2)", {"od(n,ls(n2,m2))", "od(ls(n2,m2),n)", "ca(n,ls(n2,m2))", "ca(ls(n2,m2),n)"}},
  };
  if (actor == Sort::M) return by_m;
  if (actor == Sort::N) return by_n;
  throw std::invalid_argument("tensor_action_rules: actor must be M or N");
}

const std::vector<std::pair<std::string, std::string>>& tensor_psi_rules(Sort target) {
  static const std::vector<std::pair<std::string, std::string>> to_m = {
      {"od(m,n)", "rd(m,n)"}, {"od(n,m)", "ld(n,m)"}, {"ca(m,n)", "rs(m,n)"}, {"ca(n,m)", "ls(n,m)"}};
  static const std::vector<std::pair<std::string, std::string>> to_n = {
      {"od(m,n)", "ld(m,n)"}, {"od(n,m)", "rd(n,m)"}, {"ca(m,n)", "ls(m,n)"}, {"ca(n,m)", "rs(n,m)"}};
  if (target == Sort::M) return to_m;
  if (target == Sort::N) return to_n;
  throw std::invalid_argument("tensor_psi_rules: target must be M or N");
}

// ---------------------------------------------------------------------------
// Evaluation of the rule tables on basis generators

namespace {

/// A generator pattern such as od(n2,m2): block and the names of its two
/// variables in written order.
struct Pattern {
  int block = 0;
  std::string first, second;
};

Pattern parse_pattern(const std::string& text) {
  auto f = formula::parse(text);
  if (f.size() != 1 || f[0].sign != 1) throw std::logic_error("generator pattern " + text);
  const auto& e = f[0].expr;
  if ((e.op != Op::od && e.op != Op::ca) || e.args[0].op != Op::var || e.args[1].op != Op::var)
    throw std::logic_error("generator pattern " + text);
  const bool mn = formula::variable_sort(e.args[0].name) == Sort::M;
  return {(e.op == Op::ca ? 2 : 0) + (mn ? 0 : 1), e.args[0].name, e.args[1].name};
}

using Assignment = std::vector<std::pair<std::string, Index>>;

/// Compiled single-term formula with its variable slots resolved by name.
struct Term {
  Equation eq;

  template <class S>
  SparseVec<S> operator()(const formula::Context<S>& ctx, const Assignment& assign) const {
    std::vector<SparseVec<S>> values;
    values.reserve(eq.variables.size());
    for (const auto& v : eq.variables) {
      auto it = std::find_if(assign.begin(), assign.end(), [&](const auto& p) { return p.first == v; });
      if (it == assign.end()) throw std::logic_error("rule variable " + v + " unassigned");
      values.push_back({{it->second, ctx.one()}});
    }
    return formula::evaluate(eq.lhs, ctx, values);
  }
};

Term compile(const std::string& text) { return {formula::make_term(text, text)}; }

struct CompiledStructure {
  // indexed [left block][right block]
  std::array<std::array<Term, 4>, 4> product, bracket;
  std::array<Pattern, 4> left, right;
};

const CompiledStructure& compiled_structure() {
  static const CompiledStructure c = [] {
    CompiledStructure c;
    std::array<std::array<bool, 4>, 4> seen{};
    for (const auto& rule : tensor_structure_rules()) {
      Pattern l = parse_pattern(rule.left), r = parse_pattern(rule.right);
      if (seen[l.block][r.block]) throw std::logic_error("duplicate structure rule");
      seen[l.block][r.block] = true;
      c.product[l.block][r.block] = compile(rule.product);
      c.bracket[l.block][r.block] = compile(rule.bracket);
      c.left[l.block] = l;
      c.right[r.block] = r;
    }
    return c;
  }();
  return c;
}

struct CompiledActions {
  std::array<std::array<Term, 4>, 4> result;  // [actee block][ldot, rdot, lstar, rstar]
  std::array<Pattern, 4> actee;
  std::string actor;  // variable name of the acting element
};

const CompiledActions& compiled_actions(Sort actor) {
  static const auto build = [](Sort s) {
    CompiledActions c;
    c.actor = s == Sort::M ? "m" : "n";
    for (const auto& rule : tensor_action_rules(s)) {
      Pattern p = parse_pattern(rule.actee);
      c.actee[p.block] = p;
      for (int k = 0; k < 4; ++k) c.result[p.block][k] = compile(rule.result[k]);
    }
    return c;
  };
  static const CompiledActions m = build(Sort::M), n = build(Sort::N);
  return actor == Sort::M ? m : n;
}

struct CompiledPsi {
  std::array<Term, 4> result;
  std::array<Pattern, 4> source;
};

const CompiledPsi& compiled_psi(Sort target) {
  static const auto build = [](Sort s) {
    CompiledPsi c;
    for (const auto& [pat, res] : tensor_psi_rules(s)) {
      Pattern p = parse_pattern(pat);
      c.source[p.block] = p;
      c.result[p.block] = compile(res);
    }
    return c;
  };
  static const CompiledPsi m = build(Sort::M), n = build(Sort::N);
  return target == Sort::M ? m : n;
}

int block_of(Index flat, Index block_size) { return static_cast<int>(flat / block_size); }

/// Basis indices (first, second) of a flat generator.
std::pair<Index, Index> factors_of(Index flat, Index dim_m, Index dim_n) {
  auto g = generator_at(dim_m, dim_n, flat);
  return {g.i, g.j};
}

Assignment assign(const Pattern& p, Index flat, Index dim_m, Index dim_n) {
  auto [i, j] = factors_of(flat, dim_m, dim_n);
  return {{p.first, i}, {p.second, j}};
}

template <class S>
std::string relation_label(const SparseQuotient<S>& q, std::size_t row, Index dim_m, Index dim_n) {
  Index pivot = q.relations().pivots()[row];
  return "relation row with pivot " + generator_name(generator_at(dim_m, dim_n, pivot));
}

/// Every relation row r satisfies sum_g r_g table(g) = 0, where table(g)
/// holds quotient coordinates. `at(g, x)` returns the table entry for
/// generator g against the fixed partner x; partners range over [0, count).
template <class S, class At>
void require_vanishing(const SparseQuotient<S>& q, Index out_dim, Index partners, At&& at, Index dim_m, Index dim_n,
                       const std::string& what) {
  if (out_dim == 0) return;
  const auto rows = q.relations().rows();
  SparseAccumulator<S> acc(out_dim);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (Index x = 0; x < partners; ++x) {
      for (const auto& [g, c] : rows[k]) acc.add(at(g, x), c);
      if (!acc.take().empty())
        throw VerificationFailure(what + " does not descend to the quotient: " + relation_label(q, k, dim_m, dim_n) +
                                  ", partner " + std::to_string(x));
    }
}

template <class S>
BilinearMap<S> table_map(const std::vector<SparseVec<S>>& table, Index stride, const std::vector<Index>& left,
                         const std::vector<Index>& right, Index out) {
  BilinearMap<S> b(static_cast<Index>(left.size()), static_cast<Index>(right.size()), out);
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t c = 0; c < right.size(); ++c)
      for (const auto& [k, v] : table[left[a] * stride + right[c]])
        b(static_cast<Index>(a), static_cast<Index>(c), k) = v;
  return b;
}

template <class S>
EchelonBuilder<S> relation_builder(const MutualActions<S>& mut, std::size_t* count) {
  auto comp = check_compatibility(mut);
  if (!comp.valid()) throw PreconditionError("tensor product: the mutual actions are not compatible\n" + comp.describe());
  MutualContext<S> mc(mut);
  const auto& ctx = mc.context();
  const Index gdim = ctx.generator_dim();
  EchelonBuilder<S> b(gdim);
  const S minus_one = -ctx.one();
  std::size_t n = 0;
  for (const auto& eq : tensor_relation_families()) {
    if (formula::vanishes_identically(eq, ctx)) continue;
    formula::for_each_instance(eq, ctx, [&](const std::vector<Index>&, const SparseVec<S>& l, const SparseVec<S>& r) {
      SparseVec<S> v = axpy(l, minus_one, r);
      if (v.empty()) return;
      ++n;
      if (b.rank() < gdim) b.insert(v);
    });
  }
  if (count) *count = n;
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

template <class S>
Matrix<S> TensorProduct<S>::embedding() const {
  const Index g = generator_dim();
  Matrix<S> e = Matrix<S>::Zero(quotient.dim(), g);
  const S one = m().scalar(1);
  for (Index c = 0; c < g; ++c)
    for (const auto& [k, v] : quotient.project({{c, one}})) e(k, c) = v;
  return e;
}

template <class S>
Vector<S> TensorProduct<S>::generator(const TensorGeneratorIndex& g) const {
  return embed({{flat_generator(m().dim(), n().dim(), g), m().scalar(1)}});
}

template <class S>
Subspace<S> relation_span(const MutualActions<S>& mut) {
  return relation_builder(mut, nullptr).subspace();
}

template <class S>
TensorProduct<S> nonabelian_tensor(const MutualActions<S>& mut, std::string name) {
  TensorProduct<S> t;
  t.mut = mut;
  t.quotient = SparseQuotient<S>(relation_builder(t.mut, &t.relation_vectors));
  const Index dm = t.m().dim(), dn = t.n().dim(), gdim = t.generator_dim(), qd = t.quotient.dim();
  const Index block_size = dm * dn;

  MutualContext<S> mc(t.mut);
  const auto& ctx = mc.context();
  const auto& rules = compiled_structure();
  std::vector<SparseVec<S>> prod(static_cast<std::size_t>(gdim * gdim)), brk(prod.size());
  if (qd > 0)
    for (Index g = 0; g < gdim; ++g) {
      const int bl = block_of(g, block_size);
      auto left = assign(rules.left[bl], g, dm, dn);
      for (Index h = 0; h < gdim; ++h) {
        const int br = block_of(h, block_size);
        auto vars = left;
        auto right = assign(rules.right[br], h, dm, dn);
        vars.insert(vars.end(), right.begin(), right.end());
        prod[g * gdim + h] = t.quotient.project(rules.product[bl][br](ctx, vars));
        brk[g * gdim + h] = t.quotient.project(rules.bracket[bl][br](ctx, vars));
      }
    }
  auto at_left = [&](const std::vector<SparseVec<S>>& tab) {
    return [&tab, gdim](Index g, Index x) -> const SparseVec<S>& { return tab[g * gdim + x]; };
  };
  auto at_right = [&](const std::vector<SparseVec<S>>& tab) {
    return [&tab, gdim](Index g, Index x) -> const SparseVec<S>& { return tab[x * gdim + g]; };
  };
  require_vanishing(t.quotient, qd, gdim, at_left(prod), dm, dn, "product (left argument)");
  require_vanishing(t.quotient, qd, gdim, at_right(prod), dm, dn, "product (right argument)");
  require_vanishing(t.quotient, qd, gdim, at_left(brk), dm, dn, "bracket (left argument)");
  require_vanishing(t.quotient, qd, gdim, at_right(brk), dm, dn, "bracket (right argument)");

  const auto& free = t.quotient.free_columns();
  if (name.empty() && !t.m().name().empty() && !t.n().name().empty()) name = t.m().name() + "(x)" + t.n().name();
  t.awb = FiniteAwb<S>(t.m().field(), table_map(prod, gdim, free, free, qd), table_map(brk, gdim, free, free, qd),
                       name, Validation::skip);
  auto report = validate_awb(t.awb);
  if (!report.valid()) throw AxiomError("tensor product: the quotient operations violate the axioms", report);
  return t;
}

template <class S>
Vector<S> pure_tensor(const TensorProduct<S>& t, const Vector<S>& x, const Vector<S>& y, TensorKind kind,
                      Orientation orientation) {
  const Index dm = t.m().dim(), dn = t.n().dim();
  const bool mn = orientation == Orientation::mn;
  if (x.size() != (mn ? dm : dn) || y.size() != (mn ? dn : dm))
    throw DimensionError("pure_tensor: element dimensions do not match the orientation");
  SparseVec<S> v;
  for (Index i = 0; i < x.size(); ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < y.size(); ++j)
      if (!is_zero(y(j))) v.emplace_back(flat_generator(dm, dn, {kind, orientation, i, j}), x(i) * y(j));
  }
  return t.embed(v);
}

template <class S>
PsiMaps<S> psi_maps(const TensorProduct<S>& t) {
  const Index dm = t.m().dim(), dn = t.n().dim(), gdim = t.generator_dim(), block_size = dm * dn;
  MutualContext<S> mc(t.mut);
  const auto& ctx = mc.context();
  PsiMaps<S> out;
  for (Sort target : {Sort::M, Sort::N}) {
    const auto& rules = compiled_psi(target);
    const Index td = target == Sort::M ? dm : dn;
    std::vector<SparseVec<S>> cols(static_cast<std::size_t>(gdim));
    for (Index g = 0; g < gdim; ++g) {
      const int b = block_of(g, block_size);
      cols[g] = rules.result[b](ctx, assign(rules.source[b], g, dm, dn));
    }
    // vanishing on relations, checked in the target coordinates
    for (const auto& row : t.quotient.relations().rows()) {
      SparseAccumulator<S> acc(td);
      for (const auto& [g, c] : row) acc.add(cols[g], c);
      if (!acc.take().empty())
        throw VerificationFailure(std::string("psi_") + (target == Sort::M ? "M" : "N") +
                                  " does not vanish on the relation with pivot " +
                                  generator_name(generator_at(dm, dn, row.front().first)));
    }
    Matrix<S> mat = Matrix<S>::Zero(td, t.quotient.dim());
    for (Index a = 0; a < t.quotient.dim(); ++a)
      for (const auto& [k, v] : cols[t.quotient.lift(a)]) mat(k, a) = v;
    AwbMorphism<S> f{t.awb, target == Sort::M ? t.m() : t.n(), mat};
    auto r = check_morphism(f);
    if (!r.valid()) throw AxiomError("psi map is not a morphism", r);
    (target == Sort::M ? out.psi_m : out.psi_n) = std::move(f);
  }
  return out;
}

template <class S>
InducedActions<S> induced_actions(const TensorProduct<S>& t) {
  const Index dm = t.m().dim(), dn = t.n().dim(), gdim = t.generator_dim(), block_size = dm * dn;
  const Index qd = t.quotient.dim();
  MutualContext<S> mc(t.mut);
  const auto& ctx = mc.context();
  InducedActions<S> out;
  for (Sort actor : {Sort::M, Sort::N}) {
    const auto& rules = compiled_actions(actor);
    const FiniteAwb<S>& acting = actor == Sort::M ? t.m() : t.n();
    const Index ad = acting.dim();
    AwbAction<S> act{acting, t.awb, BilinearMap<S>(ad, qd, qd), BilinearMap<S>(qd, ad, qd), BilinearMap<S>(ad, qd, qd),
                     BilinearMap<S>(qd, ad, qd)};
    for (int kind = 0; kind < 4; ++kind) {
      // table[g * ad + x]: generator g acted on by basis element x
      std::vector<SparseVec<S>> table(static_cast<std::size_t>(gdim * ad));
      if (qd > 0)
        for (Index g = 0; g < gdim; ++g) {
          const int b = block_of(g, block_size);
          auto vars = assign(rules.actee[b], g, dm, dn);
          vars.emplace_back(rules.actor, 0);
          for (Index x = 0; x < ad; ++x) {
            vars.back().second = x;
            table[g * ad + x] = t.quotient.project(rules.result[b][kind](ctx, vars));
          }
        }
      static const char* names[] = {"ldot", "rdot", "lstar", "rstar"};
      require_vanishing(
          t.quotient, qd, ad, [&](Index g, Index x) -> const SparseVec<S>& { return table[g * ad + x]; }, dm, dn,
          std::string("induced action ") + names[kind] + " of " + (actor == Sort::M ? "M" : "N"));
      BilinearMap<S>& target = kind == 0 ? act.ldot : kind == 1 ? act.rdot : kind == 2 ? act.lstar : act.rstar;
      const bool left = kind % 2 == 0;
      for (Index a = 0; a < qd; ++a)
        for (Index x = 0; x < ad; ++x)
          for (const auto& [k, v] : table[t.quotient.lift(a) * ad + x]) {
            if (left)
              target(x, a, k) = v;
            else
              target(a, x, k) = v;
          }
    }
    auto r = validate_action(act);
    if (!r.valid()) throw AxiomError("induced action violates the action equations", r);
    (actor == Sort::M ? out.by_m : out.by_n) = std::move(act);
  }
  return out;
}

template <class S>
TensorXMods<S> xmod_on_tensor(const TensorProduct<S>& t) {
  auto psi = psi_maps(t);
  auto acts = induced_actions(t);
  TensorXMods<S> out{{psi.psi_m, acts.by_m}, {psi.psi_n, acts.by_n}};
  for (const auto* xm : {&out.over_m, &out.over_n}) {
    auto r = validate_xmod(*xm);
    if (!r.valid()) throw AxiomError("tensor crossed module fails the crossed module identities", r);
  }
  return out;
}

template <class S>
ValidationReport check_equivariance(const Matrix<S>& f, const Matrix<S>& g, const MutualActions<S>& source,
                                    const MutualActions<S>& target) {
  const Index dm = source.m().dim(), dn = source.n().dim();
  if (f.rows() != target.m().dim() || f.cols() != dm || g.rows() != target.n().dim() || g.cols() != dn)
    throw DimensionError("check_equivariance: map shapes do not match the algebras");
  static const char* names[] = {"ldot", "rdot", "lstar", "rstar"};
  ValidationReport r;
  for (int kind = 0; kind < 4; ++kind) {
    const bool left = kind % 2 == 0;
    const auto& nm_src = source.n_on_m.map(kind);
    const auto& nm_tgt = target.n_on_m.map(kind);
    const auto& mn_src = source.m_on_n.map(kind);
    const auto& mn_tgt = target.m_on_n.map(kind);
    for (Index i = 0; i < dm; ++i)
      for (Index j = 0; j < dn; ++j) {
        Vector<S> fm = f.col(i), gn = g.col(j);
        Vector<S> lhs = f * (left ? nm_src.on_basis(j, i) : nm_src.on_basis(i, j));
        Vector<S> rhs = left ? nm_tgt.apply(gn, fm) : nm_tgt.apply(fm, gn);
        ++r.checks;
        if (!exact_equal(lhs, rhs))
          r.witnesses.push_back({std::string("f.") + names[kind], {i, j}, format_vector(lhs), format_vector(rhs)});
        lhs = g * (left ? mn_src.on_basis(i, j) : mn_src.on_basis(j, i));
        rhs = left ? mn_tgt.apply(fm, gn) : mn_tgt.apply(gn, fm);
        ++r.checks;
        if (!exact_equal(lhs, rhs))
          r.witnesses.push_back({std::string("g.") + names[kind], {i, j}, format_vector(lhs), format_vector(rhs)});
      }
  }
  return r;
}

template <class S>
AwbMorphism<S> tensor_functor(const AwbMorphism<S>& f, const AwbMorphism<S>& g, const TensorProduct<S>& t,
                              const TensorProduct<S>& target) {
  if (!(f.source == t.m()) || !(g.source == t.n()) || !(f.target == target.m()) || !(g.target == target.n()))
    throw PreconditionError("tensor_functor: maps do not match the factors of the tensor products");
  for (const auto* h : {&f, &g}) {
    auto r = check_morphism(*h);
    if (!r.valid()) throw PreconditionError("tensor_functor: factor map is not a morphism\n" + r.describe());
  }
  auto eq = check_equivariance(f.matrix, g.matrix, t.mut, target.mut);
  if (!eq.valid()) throw PreconditionError("tensor_functor: maps do not preserve the actions\n" + eq.describe());

  const Index dm = t.m().dim(), dn = t.n().dim(), gdim = t.generator_dim();
  const Index tm = target.m().dim(), tn = target.n().dim();
  std::vector<SparseVec<S>> image(static_cast<std::size_t>(gdim));
  for (Index c = 0; c < gdim; ++c) {
    auto gi = generator_at(dm, dn, c);
    const bool mn = gi.orientation == Orientation::mn;
    Vector<S> x = mn ? Vector<S>(f.matrix.col(gi.i)) : Vector<S>(g.matrix.col(gi.i));
    Vector<S> y = mn ? Vector<S>(g.matrix.col(gi.j)) : Vector<S>(f.matrix.col(gi.j));
    SparseVec<S> v;
    for (Index p = 0; p < x.size(); ++p) {
      if (is_zero(x(p))) continue;
      for (Index q = 0; q < y.size(); ++q)
        if (!is_zero(y(q))) v.emplace_back(flat_generator(tm, tn, {gi.kind, gi.orientation, p, q}), x(p) * y(q));
    }
    image[c] = target.quotient.project(v);
  }
  require_vanishing(
      t.quotient, target.quotient.dim(), 1, [&](Index c, Index) -> const SparseVec<S>& { return image[c]; }, dm, dn, "f (x) g");
  Matrix<S> mat = Matrix<S>::Zero(target.quotient.dim(), t.quotient.dim());
  for (Index a = 0; a < t.quotient.dim(); ++a)
    for (const auto& [k, v] : image[t.quotient.lift(a)]) mat(k, a) = v;
  AwbMorphism<S> out{t.awb, target.awb, mat};
  auto r = check_morphism(out);
  if (!r.valid()) throw AxiomError("f (x) g is not a morphism", r);
  return out;
}

#define AWB_TENSOR_CORE_INSTANTIATE(S)                                                                              \
  template struct TensorProduct<S>;                                                                                 \
  template Subspace<S> relation_span<S>(const MutualActions<S>&);                                                   \
  template TensorProduct<S> nonabelian_tensor<S>(const MutualActions<S>&, std::string);                             \
  template Vector<S> pure_tensor<S>(const TensorProduct<S>&, const Vector<S>&, const Vector<S>&, TensorKind,        \
                                    Orientation);                                                                   \
  template PsiMaps<S> psi_maps<S>(const TensorProduct<S>&);                                                         \
  template InducedActions<S> induced_actions<S>(const TensorProduct<S>&);                                           \
  template TensorXMods<S> xmod_on_tensor<S>(const TensorProduct<S>&);                                               \
  template ValidationReport check_equivariance<S>(const Matrix<S>&, const Matrix<S>&, const MutualActions<S>&,      \
                                                  const MutualActions<S>&);                                         \
  template AwbMorphism<S> tensor_functor<S>(const AwbMorphism<S>&, const AwbMorphism<S>&, const TensorProduct<S>&, \
                                            const TensorProduct<S>&);

AWB_TENSOR_CORE_INSTANTIATE(Rational)
AWB_TENSOR_CORE_INSTANTIATE(ModP)

}  // namespace awb
