#include "awb/io.hpp"

#include <fstream>
#include <sstream>

#include "awb/tensor.hpp"

namespace awb::io {

namespace {

constexpr Index max_file_dim = 64;
constexpr int max_reference_depth = 8;

[[noreturn]] void fail(const Origin& where, const std::string& msg) { throw InputError(where.describe() + ": " + msg); }

const Json& member(const Json& j, const std::string& key, const Origin& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing \"" + key + "\"");
  return *it;
}

Index read_dim(const Json& j, const Origin& where) {
  if (!j.is_number_integer()) fail(where, "expected a non-negative integer");
  auto v = j.get<long long>();
  if (v < 0 || v > max_file_dim) fail(where, "dimension out of range 0.." + std::to_string(max_file_dim));
  return static_cast<Index>(v);
}

void check_header(const Json& j, const std::string& kind, const Origin& where) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  if (auto v = j.find("format_version"); v != j.end()) {
    if (!v->is_number_integer() || v->get<long long>() != format_version)
      fail(where.at("format_version"), "unsupported format version (expected " + std::to_string(format_version) + ")");
  }
  if (auto k = j.find("kind"); k != j.end()) {
    if (!k->is_string() || k->get<std::string>() != kind)
      fail(where.at("kind"), "expected kind \"" + kind + "\"");
  }
}

Json header(const std::string& kind) { return Json{{"format_version", format_version}, {"kind", kind}}; }

/// Follows a string reference to another file; objects are returned as is.
std::pair<Json, Origin> resolve(const Json& j, const Origin& where, int depth = 0) {
  if (!j.is_string()) return {j, where};
  if (depth >= max_reference_depth) fail(where, "too many nested file references");
  auto base = where.file.empty() ? std::filesystem::path(".") : where.file.parent_path();
  auto path = base / j.get<std::string>();
  auto loaded = read_json_file(path);
  return resolve(loaded, Origin{path, ""}, depth + 1);
}

template <class S>
void require_field(const FieldSpec& f, const Origin& where) {
  if (!ScalarTraits<S>::supports(f)) fail(where, "field " + f.to_string() + " does not match the other inputs");
}

void require_same_field(const FieldSpec& a, const FieldSpec& b, const Origin& where) {
  if (!(a == b)) fail(where, "field mismatch: " + a.to_string() + " and " + b.to_string());
}

}  // namespace

std::string Origin::describe() const {
  std::string f = file.empty() ? "<input>" : file.string();
  return pointer.empty() ? f : f + " at " + pointer;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.what() carries "line L, column C"
    throw InputError(what + ": malformed JSON: " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << dump(j);
}

FieldSpec field_of(const Json& j, const Origin& where) {
  auto [obj, origin] = resolve(j, where);
  if (!obj.is_object()) fail(origin, "expected an object");
  if (auto f = obj.find("field"); f != obj.end()) {
    if (!f->is_string()) fail(origin.at("field"), "expected a string");
    try {
      return FieldSpec::parse(f->get<std::string>());
    } catch (const InputError& e) {
      fail(origin.at("field"), e.what());
    }
  }
  for (const char* key : {"actor", "m", "r", "source"})
    if (obj.contains(key)) return field_of(obj[key], origin.at(key));
  fail(origin, "no \"field\" entry");
}

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices, tensors

template <class S>
Json scalar_to_json(const S& x) {
  return ScalarTraits<S>::str(x);
}

template <class S>
S scalar_from_json(const Json& j, const FieldSpec& field, const Origin& where) {
  if (!j.is_string()) fail(where, "scalars must be strings");
  try {
    return ScalarTraits<S>::parse(j.get<std::string>(), field);
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

template <class S>
Json vector_to_json(const Vector<S>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

template <class S>
Vector<S> vector_from_json(const Json& j, Index n, const FieldSpec& field, const Origin& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n)
    fail(where, "expected an array of " + std::to_string(n) + " scalars");
  Vector<S> v(n);
  for (Index i = 0; i < n; ++i) v(i) = scalar_from_json<S>(j[i], field, where.at(i));
  return v;
}

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json<S>(m.row(r).transpose()));
  return out;
}

template <class S>
Matrix<S> matrix_from_json(const Json& j, Index rows, Index cols, const FieldSpec& field, const Origin& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    fail(where, "expected " + std::to_string(rows) + " rows of " + std::to_string(cols) + " scalars");
  Matrix<S> m(rows, cols);
  for (Index r = 0; r < rows; ++r) m.row(r) = vector_from_json<S>(j[r], cols, field, where.at(r)).transpose();
  return m;
}

template <class S>
Json bilinear_to_json(const BilinearMap<S>& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.left_dim(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.right_dim(); ++j) row.push_back(vector_to_json(m.on_basis(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
BilinearMap<S> bilinear_from_json(const Json& j, Index left, Index right, Index out, const FieldSpec& field,
                                  const Origin& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != left)
    fail(where, "expected a " + std::to_string(left) + " x " + std::to_string(right) + " x " + std::to_string(out) +
                    " array");
  BilinearMap<S> m(left, right, out);
  for (Index i = 0; i < left; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != right)
      fail(where.at(i), "expected " + std::to_string(right) + " entries");
    for (Index k = 0; k < right; ++k)
      m.set_on_basis(i, k, vector_from_json<S>(row[k], out, field, where.at(i).at(k)));
  }
  return m;
}

template <class S>
Json subspace_to_json(const Subspace<S>& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"basis", matrix_to_json(s.basis())}};
}

template <class S>
Subspace<S> subspace_from_json(const Json& j, Index ambient, const FieldSpec& field, const Origin& where) {
  const Json& rows = j.is_object() ? member(j, "basis", where) : j;
  Origin at = j.is_object() ? where.at("basis") : where;
  if (!rows.is_array()) fail(at, "expected an array of vectors");
  auto m = matrix_from_json<S>(rows, static_cast<Index>(rows.size()), ambient, field, at);
  return Subspace<S>::span_rows(m);
}

// ---------------------------------------------------------------------------
// Objects

template <class S>
Json algebra_to_json(const FiniteAwb<S>& a) {
  Json j = header("algebra");
  j["field"] = a.field().to_string();
  j["dim"] = a.dim();
  j["product"] = bilinear_to_json(a.product());
  j["bracket"] = bilinear_to_json(a.bracket());
  if (!a.name().empty()) j["name"] = a.name();
  return j;
}

template <class S>
FiniteAwb<S> algebra_from_json(const Json& j0, const Origin& where0, const LoadOptions& opts) {
  auto [j, where] = resolve(j0, where0);
  check_header(j, "algebra", where);
  auto field = field_of(j, where);
  require_field<S>(field, where.at("field"));
  const Index n = read_dim(member(j, "dim", where), where.at("dim"));
  auto p = bilinear_from_json<S>(member(j, "product", where), n, n, n, field, where.at("product"));
  auto b = bilinear_from_json<S>(member(j, "bracket", where), n, n, n, field, where.at("bracket"));
  std::string name;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) fail(where.at("name"), "expected a string");
    name = it->get<std::string>();
  }
  auto validation = opts.allow_invalid ? Validation::skip : Validation::enforce;
  try {
    return FiniteAwb<S>(field, std::move(p), std::move(b), name, validation);
  } catch (const AxiomError& e) {
    throw AxiomError(where.describe() + ": not an algebra with bracket", e.report());
  }
}

template <class S>
Json action_tensors_to_json(const AwbAction<S>& act) {
  return Json{{"ldot", bilinear_to_json(act.ldot)},
              {"rdot", bilinear_to_json(act.rdot)},
              {"lstar", bilinear_to_json(act.lstar)},
              {"rstar", bilinear_to_json(act.rstar)}};
}

template <class S>
AwbAction<S> action_tensors_from_json(const Json& j, const FiniteAwb<S>& actor, const FiniteAwb<S>& actee,
                                      const Origin& where) {
  require_same_field(actor.field(), actee.field(), where);
  const auto& f = actor.field();
  const Index na = actor.dim(), nm = actee.dim();
  AwbAction<S> act;
  act.actor = actor;
  act.actee = actee;
  act.ldot = bilinear_from_json<S>(member(j, "ldot", where), na, nm, nm, f, where.at("ldot"));
  act.rdot = bilinear_from_json<S>(member(j, "rdot", where), nm, na, nm, f, where.at("rdot"));
  act.lstar = bilinear_from_json<S>(member(j, "lstar", where), na, nm, nm, f, where.at("lstar"));
  act.rstar = bilinear_from_json<S>(member(j, "rstar", where), nm, na, nm, f, where.at("rstar"));
  return act;
}

template <class S>
Json action_to_json(const AwbAction<S>& act) {
  Json j = header("action");
  j.update(action_tensors_to_json(act));
  j["actor"] = algebra_to_json(act.actor);
  j["actee"] = algebra_to_json(act.actee);
  return j;
}

template <class S>
AwbAction<S> action_from_json(const Json& j0, const Origin& where0, const LoadOptions& opts) {
  auto [j, where] = resolve(j0, where0);
  check_header(j, "action", where);
  auto actor = algebra_from_json<S>(member(j, "actor", where), where.at("actor"), opts);
  auto actee = algebra_from_json<S>(member(j, "actee", where), where.at("actee"), opts);
  auto act = action_tensors_from_json(j, actor, actee, where);
  if (!opts.allow_invalid) {
    auto r = validate_action(act);
    if (!r.valid()) throw AxiomError(where.describe() + ": action equations fail", r);
  }
  return act;
}

template <class S>
Json mutual_actions_to_json(const MutualActions<S>& mut) {
  Json j = header("mutual_actions");
  j["m_on_n"] = action_tensors_to_json(mut.m_on_n);
  j["n_on_m"] = action_tensors_to_json(mut.n_on_m);
  return j;
}

template <class S>
MutualActions<S> mutual_actions_from_json(const Json& j0, const FiniteAwb<S>& m, const FiniteAwb<S>& n,
                                          const Origin& where0) {
  auto [j, where] = resolve(j0, where0);
  check_header(j, "mutual_actions", where);
  MutualActions<S> mut;
  mut.m_on_n = action_tensors_from_json(member(j, "m_on_n", where), m, n, where.at("m_on_n"));
  mut.n_on_m = action_tensors_from_json(member(j, "n_on_m", where), n, m, where.at("n_on_m"));
  return mut;
}

template <class S>
Json xmod_to_json(const CrossedModule<S>& xm) {
  Json j = header("xmod");
  j["m"] = algebra_to_json(xm.m());
  j["a"] = algebra_to_json(xm.a());
  j["mu"] = matrix_to_json(xm.mu.matrix);
  j["action"] = action_tensors_to_json(xm.act);
  return j;
}

template <class S>
CrossedModule<S> xmod_from_json(const Json& j0, const Origin& where0, const LoadOptions& opts) {
  auto [j, where] = resolve(j0, where0);
  check_header(j, "xmod", where);
  auto m = algebra_from_json<S>(member(j, "m", where), where.at("m"), opts);
  auto a = algebra_from_json<S>(member(j, "a", where), where.at("a"), opts);
  require_same_field(m.field(), a.field(), where);
  CrossedModule<S> xm;
  xm.mu = AwbMorphism<S>{m, a, matrix_from_json<S>(member(j, "mu", where), a.dim(), m.dim(), m.field(), where.at("mu"))};
  xm.act = action_tensors_from_json(member(j, "action", where), a, m, where.at("action"));
  if (!opts.allow_invalid) {
    auto mr = check_morphism(xm.mu);
    if (!mr.valid()) throw AxiomError(where.describe() + ": mu is not a morphism", mr);
    auto ar = validate_action(xm.act);
    if (!ar.valid()) throw AxiomError(where.describe() + ": action equations fail", ar);
    auto r = validate_xmod(xm);
    if (!r.valid()) throw AxiomError(where.describe() + ": crossed module identities fail", r);
  }
  return xm;
}

template <class S>
Json cat1_to_json(const Cat1Awb<S>& c) {
  Json j = header("cat1");
  j["r"] = algebra_to_json(c.r);
  j["p"] = subspace_to_json(c.p);
  j["s"] = matrix_to_json(c.s);
  j["t"] = matrix_to_json(c.t);
  return j;
}

template <class S>
Cat1Awb<S> cat1_from_json(const Json& j0, const Origin& where0, const LoadOptions& opts) {
  auto [j, where] = resolve(j0, where0);
  check_header(j, "cat1", where);
  Cat1Awb<S> c;
  c.r = algebra_from_json<S>(member(j, "r", where), where.at("r"), opts);
  const Index n = c.r.dim();
  const auto& f = c.r.field();
  c.p = subspace_from_json<S>(member(j, "p", where), n, f, where.at("p"));
  c.s = matrix_from_json<S>(member(j, "s", where), n, n, f, where.at("s"));
  c.t = matrix_from_json<S>(member(j, "t", where), n, n, f, where.at("t"));
  if (!opts.allow_invalid) {
    auto r = validate_cat1(c);
    if (!r.valid()) throw AxiomError(where.describe() + ": cat1 conditions fail", r);
  }
  return c;
}

template <class S>
Json morphism_to_json(const AwbMorphism<S>& f) {
  Json j = header("morphism");
  j["source"] = algebra_to_json(f.source);
  j["target"] = algebra_to_json(f.target);
  j["matrix"] = matrix_to_json(f.matrix);
  return j;
}

template <class S>
AwbMorphism<S> morphism_from_json(const Json& j0, const Origin& where0, const LoadOptions& opts) {
  auto [j, where] = resolve(j0, where0);
  check_header(j, "morphism", where);
  auto src = algebra_from_json<S>(member(j, "source", where), where.at("source"), opts);
  auto tgt = algebra_from_json<S>(member(j, "target", where), where.at("target"), opts);
  require_same_field(src.field(), tgt.field(), where);
  AwbMorphism<S> f{src, tgt,
                   matrix_from_json<S>(member(j, "matrix", where), tgt.dim(), src.dim(), src.field(), where.at("matrix"))};
  if (!opts.allow_invalid) {
    auto r = check_morphism(f);
    if (!r.valid()) throw AxiomError(where.describe() + ": not a morphism", r);
  }
  return f;
}

template <class S>
FiniteAwb<S> load_algebra(const std::filesystem::path& path, const LoadOptions& opts) {
  return algebra_from_json<S>(read_json_file(path), Origin{path, ""}, opts);
}

// ---------------------------------------------------------------------------
// Reports

Json validation_to_json(const ValidationReport& r, std::size_t max_witnesses) {
  Json w = Json::array();
  for (std::size_t i = 0; i < r.witnesses.size() && i < max_witnesses; ++i) {
    const auto& x = r.witnesses[i];
    w.push_back(Json{{"check", x.check}, {"indices", x.indices}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  }
  return Json{{"valid", r.valid()}, {"instances", r.checks}, {"witness_count", r.witnesses.size()}, {"witnesses", w}};
}

Json checks_to_json(const CheckList& c) {
  Json out = Json::array();
  for (const auto& item : c.items) {
    Json x{{"name", item.name},
           {"role", item.role == CheckRole::hypothesis ? "hypothesis" : "conclusion"},
           {"passed", item.passed}};
    if (!item.detail.empty()) x["detail"] = item.detail;
    out.push_back(std::move(x));
  }
  return out;
}

Json family_counts_json() {
  const auto& t = tensor_family_counts();
  return Json{{"awb_axioms", 2},
              {"action_equations", action_equations().size()},
              {"compatibility_equations", compatibility_equations().size()},
              {"tensor_relations",
               {{"displayed_lines", t.displayed_lines},
                {"displayed_families", t.displayed_families},
                {"swapped_generated", t.swapped_generated},
                {"swapped_new", t.swapped_new},
                {"total", tensor_relation_families().size()}}}};
}

Json make_report(const std::string& command, bool pass, Json body) {
  Json r = body.is_object() ? std::move(body) : Json::object();
  r["schema_version"] = report_schema_version;
  r["command"] = command;
  r["families"] = family_counts_json();
  r["status"] = pass ? "pass" : "fail";
  return r;
}

#define AWB_IO_INSTANTIATE(S)                                                                                       \
  template Json scalar_to_json<S>(const S&);                                                                        \
  template S scalar_from_json<S>(const Json&, const FieldSpec&, const Origin&);                                     \
  template Json matrix_to_json<S>(const Matrix<S>&);                                                                \
  template Matrix<S> matrix_from_json<S>(const Json&, Index, Index, const FieldSpec&, const Origin&);                \
  template Json vector_to_json<S>(const Vector<S>&);                                                                \
  template Vector<S> vector_from_json<S>(const Json&, Index, const FieldSpec&, const Origin&);                       \
  template Json bilinear_to_json<S>(const BilinearMap<S>&);                                                         \
  template BilinearMap<S> bilinear_from_json<S>(const Json&, Index, Index, Index, const FieldSpec&, const Origin&);  \
  template Json subspace_to_json<S>(const Subspace<S>&);                                                            \
  template Subspace<S> subspace_from_json<S>(const Json&, Index, const FieldSpec&, const Origin&);                   \
  template Json algebra_to_json<S>(const FiniteAwb<S>&);                                                            \
  template FiniteAwb<S> algebra_from_json<S>(const Json&, const Origin&, const LoadOptions&);                       \
  template Json action_tensors_to_json<S>(const AwbAction<S>&);                                                     \
  template AwbAction<S> action_tensors_from_json<S>(const Json&, const FiniteAwb<S>&, const FiniteAwb<S>&,          \
                                                    const Origin&);                                                 \
  template Json action_to_json<S>(const AwbAction<S>&);                                                             \
  template AwbAction<S> action_from_json<S>(const Json&, const Origin&, const LoadOptions&);                        \
  template Json mutual_actions_to_json<S>(const MutualActions<S>&);                                                 \
  template MutualActions<S> mutual_actions_from_json<S>(const Json&, const FiniteAwb<S>&, const FiniteAwb<S>&,      \
                                                        const Origin&);                                             \
  template Json xmod_to_json<S>(const CrossedModule<S>&);                                                           \
  template CrossedModule<S> xmod_from_json<S>(const Json&, const Origin&, const LoadOptions&);                      \
  template Json cat1_to_json<S>(const Cat1Awb<S>&);                                                                 \
  template Cat1Awb<S> cat1_from_json<S>(const Json&, const Origin&, const LoadOptions&);                            \
  template Json morphism_to_json<S>(const AwbMorphism<S>&);                                                         \
  template AwbMorphism<S> morphism_from_json<S>(const Json&, const Origin&, const LoadOptions&);                    \
  template FiniteAwb<S> load_algebra<S>(const std::filesystem::path&, const LoadOptions&);

AWB_IO_INSTANTIATE(Rational)
AWB_IO_INSTANTIATE(ModP)

}  // namespace awb::io
