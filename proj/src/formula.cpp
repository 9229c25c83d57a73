#include "awb/formula.hpp"

#include <cctype>
#include <map>

namespace awb::formula {

std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::M: return "M";
    case Sort::N: return "N";
    case Sort::A: return "A";
    case Sort::G: return "G";
  }
  return "?";
}

namespace {

const std::map<std::string, Op, std::less<>>& op_names() {
  static const std::map<std::string, Op, std::less<>> names{
      {"mul", Op::mul}, {"br", Op::br}, {"ld", Op::ld}, {"rd", Op::rd}, {"ls", Op::ls},
      {"rs", Op::rs},   {"od", Op::od}, {"ca", Op::ca}, {"st", Op::st}};
  return names;
}

std::string op_name(Op op) {
  for (const auto& [name, o] : op_names())
    if (o == op) return name;
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula formula() {
    Formula f;
    skip();
    int sign = 1;
    if (peek() == '-') {
      ++pos_;
      sign = -1;
    } else if (peek() == '+') {
      ++pos_;
    }
    f.push_back({sign, expr()});
    while (true) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      f.push_back({c == '-' ? -1 : 1, expr()});
    }
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  Expr expr() {
    skip();
    std::string id = ident();
    skip();
    if (peek() != '(') {
      Expr e;
      e.name = id;
      return e;
    }
    auto it = op_names().find(id);
    if (it == op_names().end()) fail("unknown operation " + id);
    ++pos_;
    Expr e;
    e.op = it->second;
    e.args.push_back(expr());
    skip();
    if (peek() != ',') fail("expected ','");
    ++pos_;
    e.args.push_back(expr());
    skip();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    return e;
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("formula \"" + std::string(text_) + "\" at " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_variables(const Expr& e, std::vector<std::string>& out) {
  if (e.op == Op::var) {
    for (const auto& v : out)
      if (v == e.name) return;
    out.push_back(e.name);
    return;
  }
  for (const auto& a : e.args) collect_variables(a, out);
}

void assign_slots(Expr& e, const std::vector<std::string>& vars) {
  e.sort = sort_of(e);
  if (e.op == Op::var) {
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k] == e.name) e.slot = static_cast<int>(k);
    return;
  }
  for (auto& a : e.args) assign_slots(a, vars);
}

void ill_sorted(const Expr& e, const std::string& why) {
  throw InputError("ill-sorted term " + to_string(e) + ": " + why);
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).formula(); }

std::string to_string(const Expr& e) {
  if (e.op == Op::var) return e.name;
  return op_name(e.op) + "(" + to_string(e.args[0]) + "," + to_string(e.args[1]) + ")";
}

std::string to_string(const Formula& f) {
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k > 0)
      out += f[k].sign < 0 ? " - " : " + ";
    else if (f[k].sign < 0)
      out += "-";
    out += to_string(f[k].expr);
  }
  return out;
}

Sort variable_sort(std::string_view name) {
  switch (name.empty() ? '\0' : name[0]) {
    case 'm': return Sort::M;
    case 'n': return Sort::N;
    case 'a': return Sort::A;
    default: throw InputError("variable \"" + std::string(name) + "\" has no sort (must start with m, n or a)");
  }
}

Sort sort_of(const Expr& e) {
  if (e.op == Op::var) return variable_sort(e.name);
  Sort x = sort_of(e.args[0]), y = sort_of(e.args[1]);
  switch (e.op) {
    case Op::mul:
    case Op::br:
      if (x != y || x == Sort::G) ill_sorted(e, "operands must share an algebra");
      return x;
    case Op::ld:
    case Op::ls:
      if (x == y || x == Sort::G || y == Sort::G) ill_sorted(e, "actor and actee must be different algebras");
      return y;
    case Op::rd:
    case Op::rs:
      if (x == y || x == Sort::G || y == Sort::G) ill_sorted(e, "actor and actee must be different algebras");
      return x;
    case Op::od:
    case Op::ca:
    case Op::st: {
      bool ok = (x == Sort::M && y == Sort::N) || (x == Sort::N && y == Sort::M);
      if (!ok) ill_sorted(e, "tensor generators pair M with N");
      return Sort::G;
    }
    case Op::var: break;
  }
  return Sort::G;
}

Expr swapped(const Expr& e) {
  Expr out = e;
  if (e.op == Op::var) {
    if (!out.name.empty() && out.name[0] == 'm')
      out.name[0] = 'n';
    else if (!out.name.empty() && out.name[0] == 'n')
      out.name[0] = 'm';
    out.slot = -1;
    return out;
  }
  for (auto& a : out.args) a = swapped(a);
  return out;
}

Formula swapped(const Formula& f) {
  Formula out;
  for (const auto& t : f) out.push_back({t.sign, swapped(t.expr)});
  return out;
}

namespace {

Expr with_star(const Expr& e, Op kind) {
  Expr out = e;
  if (out.op == Op::st) out.op = kind;
  for (auto& a : out.args) a = with_star(a, kind);
  return out;
}

}  // namespace

Formula with_star(const Formula& f, Op kind) {
  Formula out;
  for (const auto& t : f) out.push_back({t.sign, with_star(t.expr, kind)});
  return out;
}

namespace {

Equation finish(std::string id, Formula lhs, Formula rhs) {
  Equation eq;
  eq.id = std::move(id);
  for (const auto& t : lhs) collect_variables(t.expr, eq.variables);
  for (const auto& t : rhs) collect_variables(t.expr, eq.variables);
  for (auto& t : lhs) assign_slots(t.expr, eq.variables);
  for (auto& t : rhs) assign_slots(t.expr, eq.variables);
  for (const auto& v : eq.variables) eq.variable_sorts.push_back(variable_sort(v));
  eq.lhs = std::move(lhs);
  eq.rhs = std::move(rhs);
  Sort s = result_sort(eq);
  for (const auto* side : {&eq.lhs, &eq.rhs})
    for (const auto& t : *side)
      if (sort_of(t.expr) != s) throw InputError("equation " + eq.id + " mixes sorts: " + eq.text());
  return eq;
}

}  // namespace

Equation make_equation(std::string id, std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw InputError("equation " + id + " has no '='");
  return finish(std::move(id), parse(text.substr(0, eq)), parse(text.substr(eq + 1)));
}

Equation make_term(std::string id, std::string_view text) { return finish(std::move(id), parse(text), {}); }

Equation swapped(const Equation& e, std::string id) { return finish(std::move(id), swapped(e.lhs), swapped(e.rhs)); }

Equation with_star(const Equation& e, Op kind, std::string id) {
  return finish(std::move(id), with_star(e.lhs, kind), with_star(e.rhs, kind));
}

Sort result_sort(const Equation& e) {
  const Formula& f = e.lhs.empty() ? e.rhs : e.lhs;
  if (f.empty()) throw InputError("equation " + e.id + " is empty");
  return sort_of(f.front().expr);
}

Index generator_index(Index dim_m, Index dim_n, Op kind, bool mn, Index i, Index j) {
  Index block = (kind == Op::ca ? 2 : 0) + (mn ? 0 : 1);
  return block * dim_m * dim_n + i * (mn ? dim_n : dim_m) + j;
}

namespace {

int action_kind(Op op) {
  switch (op) {
    case Op::ld: return 0;
    case Op::rd: return 1;
    case Op::ls: return 2;
    case Op::rs: return 3;
    default: return -1;
  }
}

template <class S>
const SparseTable<S>* table_for(const Expr& e, const Context<S>& ctx) {
  Sort x = e.args[0].sort, y = e.args[1].sort;
  switch (e.op) {
    case Op::mul: return ctx.product[static_cast<int>(x)];
    case Op::br: return ctx.bracket[static_cast<int>(x)];
    case Op::ld:
    case Op::ls: return ctx.action[static_cast<int>(x)][static_cast<int>(y)][action_kind(e.op)];
    case Op::rd:
    case Op::rs: return ctx.action[static_cast<int>(y)][static_cast<int>(x)][action_kind(e.op)];
    default: return nullptr;
  }
}

template <class S>
SparseVec<S> eval(const Expr& e, const Context<S>& ctx, const std::vector<SparseVec<S>>& values) {
  if (e.op == Op::var) {
    if (e.slot < 0 || static_cast<std::size_t>(e.slot) >= values.size())
      throw std::logic_error("formula variable " + e.name + " has no value");
    return values[static_cast<std::size_t>(e.slot)];
  }
  SparseVec<S> x = eval(e.args[0], ctx, values);
  if (x.empty()) return {};
  SparseVec<S> y = eval(e.args[1], ctx, values);
  if (y.empty()) return {};
  if (e.op == Op::od || e.op == Op::ca) {
    bool mn = e.args[0].sort == Sort::M;
    SparseVec<S> out;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y)
        out.emplace_back(generator_index(ctx.dims[0], ctx.dims[1], e.op, mn, i, j), a * b);
    return out;  // already sorted: block fixed, row-major in (i, j)
  }
  if (e.op == Op::st) throw std::logic_error("formula: st must be expanded before evaluation");
  const SparseTable<S>* t = table_for(e, ctx);
  if (!t) throw std::logic_error("formula: no table for " + to_string(e));
  return t->apply(x, y);
}

template <class S>
bool term_vanishes(const Expr& e, const Context<S>& ctx) {
  if (e.op == Op::var) return false;
  if (e.op != Op::od && e.op != Op::ca && e.op != Op::st) {
    const SparseTable<S>* t = table_for(e, ctx);
    if (t && t->is_zero_map()) return true;
  }
  for (const auto& a : e.args)
    if (term_vanishes(a, ctx)) return true;
  return false;
}

}  // namespace

template <class S>
SparseVec<S> evaluate(const Formula& f, const Context<S>& ctx, const std::vector<SparseVec<S>>& values) {
  if (f.size() == 1 && f[0].sign == 1) return eval(f[0].expr, ctx, values);
  SparseVec<S> out;
  for (const auto& t : f) {
    SparseVec<S> v = eval(t.expr, ctx, values);
    if (!v.empty()) out = axpy(out, S(t.sign) * ctx.one(), v);
  }
  return out;
}

template <class S>
bool vanishes_identically(const Equation& e, const Context<S>& ctx) {
  for (const auto* side : {&e.lhs, &e.rhs})
    for (const auto& t : *side)
      if (!term_vanishes(t.expr, ctx)) return false;
  return true;
}

template <class S>
ValidationReport check_equation(const Equation& e, const Context<S>& ctx) {
  ValidationReport r;
  const Index n = ctx.dim(result_sort(e));
  for_each_instance(e, ctx, [&](const std::vector<Index>& idx, const SparseVec<S>& l, const SparseVec<S>& rr) {
    ++r.checks;
    if (l.size() != rr.size() || !std::equal(l.begin(), l.end(), rr.begin(), [](const auto& a, const auto& b) {
          return a.first == b.first && a.second == b.second;
        }))
      r.witnesses.push_back({e.id, idx, format_vector(to_dense(l, n)), format_vector(to_dense(rr, n))});
  });
  return r;
}

#define AWB_FORMULA_INSTANTIATE(S)                                                                        \
  template SparseVec<S> evaluate<S>(const Formula&, const Context<S>&, const std::vector<SparseVec<S>>&); \
  template bool vanishes_identically<S>(const Equation&, const Context<S>&);                              \
  template ValidationReport check_equation<S>(const Equation&, const Context<S>&);

AWB_FORMULA_INSTANTIATE(Rational)
AWB_FORMULA_INSTANTIATE(ModP)

}  // namespace awb::formula
