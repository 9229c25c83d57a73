// Command-line front end. Every subcommand prints a short text report, or a
// versioned JSON report with --json. Exit codes: 0 all checks pass, 1 a
// mathematical check failed (the report carries the witness), 2 bad input or
// an unmet precondition.

#include <iostream>
#include <optional>
#include <sstream>
#include <type_traits>

#include "CLI11.hpp"

#include "awb/central.hpp"
#include "awb/fixtures.hpp"
#include "awb/homology.hpp"
#include "awb/io.hpp"
#include "awb/tensor.hpp"

using namespace awb;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Options {
  bool json = false;
  bool allow_invalid = false;
};

struct Outcome {
  Json body = Json::object();
  std::string text;
  bool pass = true;
};

Options g_opts;

io::LoadOptions loading(bool allow_invalid = false) { return {g_opts.allow_invalid || allow_invalid}; }

io::Origin origin(const std::string& path) { return {fs::path(path), ""}; }

template <class Fn>
Outcome with_field_of(const std::string& path, Fn&& fn) {
  auto f = io::field_of(io::read_json_file(path), origin(path));
  if (f.kind() == FieldSpec::Kind::rationals) return fn(std::type_identity<Rational>{});
  return fn(std::type_identity<ModP>{});
}

Json algebra_summary(const std::string& name, const FieldSpec& f, Index dim) {
  return Json{{"name", name}, {"field", f.to_string()}, {"dim", dim}};
}

template <class S>
Json summary(const FiniteAwb<S>& a) {
  return algebra_summary(a.name(), a.field(), a.dim());
}

template <class S>
std::string label(const FiniteAwb<S>& a) {
  std::ostringstream os;
  os << (a.name().empty() ? "<unnamed>" : a.name()) << " (dim " << a.dim() << " over " << a.field().to_string() << ")";
  return os.str();
}

std::string validation_text(const std::string& what, const ValidationReport& r) {
  std::ostringstream os;
  os << what << ": " << (r.valid() ? "ok" : "FAIL") << " (" << r.checks << " instances";
  if (!r.valid()) os << ", " << r.witnesses.size() << " violations";
  os << ")\n";
  if (!r.valid()) os << r.describe() << "\n";
  return os.str();
}

std::string checks_text(const CheckList& c) { return c.describe(); }

void add_checks(Outcome& out, const std::string& key, const CheckList& c) {
  out.body[key] = io::checks_to_json(c);
  out.text += checks_text(c);
  out.pass = out.pass && c.ok();
}

void add_validation(Outcome& out, const std::string& key, const ValidationReport& r) {
  out.body[key] = io::validation_to_json(r);
  out.text += validation_text(key, r);
  out.pass = out.pass && r.valid();
}

// ---------------------------------------------------------------------------
// Commands

template <class S>
Outcome cmd_check(const std::string& path) {
  auto a = io::load_algebra<S>(path, loading(true));
  Outcome out;
  out.body["algebra"] = summary(a);
  out.text = label(a) + "\n";
  add_validation(out, "axioms", validate_awb(a));
  return out;
}

template <class S>
Outcome cmd_invariants(const std::string& path) {
  auto a = io::load_algebra<S>(path, loading());
  Outcome out;
  auto z = center(a);
  auto d = derived_algebra(a);
  auto ab = abelianization(a);
  auto h0 = h0_isomorphism_check(a);
  out.body["algebra"] = summary(a);
  out.body["center"] = io::subspace_to_json(z);
  out.body["derived"] = io::subspace_to_json(d);
  out.body["dims"] = Json{{"center", z.dim()},
                          {"derived", d.dim()},
                          {"abelianization", ab.algebra.dim()},
                          {"h0", h0.h0_dim}};
  out.body["perfect"] = is_perfect(a);
  out.body["abelian"] = a.is_abelian();
  std::ostringstream os;
  os << label(a) << "\n"
     << "center " << z.dim() << ", derived " << d.dim() << ", abelianization " << ab.algebra.dim() << ", H_0 "
     << h0.h0_dim << "\n"
     << "perfect " << (is_perfect(a) ? "yes" : "no") << ", abelian " << (a.is_abelian() ? "yes" : "no") << "\n";
  out.text = os.str();
  add_checks(out, "h0_checks", h0.checks);
  return out;
}

template <class S>
Outcome cmd_homology(const std::string& path, int max_degree, long long max_chain_dim) {
  if (max_degree < 0) throw InputError("--max-degree must be non-negative");
  auto a = io::load_algebra<S>(path, loading());
  HomologyOptions opts;
  opts.max_chain_dim = static_cast<Index>(max_chain_dim);
  // H_k needs d_{k+1}; building the complex also checks d d = 0
  auto c = build_complex(a, max_degree + 1, opts);
  Outcome out;
  out.body["algebra"] = summary(a);
  out.body["chain_dims"] = c.dims;
  out.body["d_squared_zero"] = true;
  Json hs = Json::array();
  std::ostringstream os;
  os << label(a) << "\nchain dims";
  for (auto n : c.dims) os << " " << n;
  os << "\nd d = 0 up to degree " << max_degree + 1 << "\n";
  for (int n = 0; n <= max_degree; ++n) {
    auto h = homology(c, n);
    hs.push_back(Json{{"degree", n}, {"dim", h.dimension}, {"cycles", h.cycles_dim}, {"boundaries", h.boundaries_dim}});
    os << "H_" << n << " = " << h.dimension << " (cycles " << h.cycles_dim << ", boundaries " << h.boundaries_dim
       << ")\n";
  }
  out.body["homology"] = hs;
  out.text = os.str();
  return out;
}

template <class S>
Outcome cmd_action_check(const std::string& path) {
  auto act = io::action_from_json<S>(io::read_json_file(path), origin(path), loading(true));
  Outcome out;
  out.body["actor"] = summary(act.actor);
  out.body["actee"] = summary(act.actee);
  out.text = "actor " + label(act.actor) + "\nactee " + label(act.actee) + "\n";
  add_validation(out, "actor_axioms", validate_awb(act.actor));
  add_validation(out, "actee_axioms", validate_awb(act.actee));
  add_validation(out, "action", validate_action(act));
  return out;
}

template <class S>
Outcome cmd_semidirect(const std::string& path) {
  auto act = io::action_from_json<S>(io::read_json_file(path), origin(path), loading());
  auto sd = semidirect(act);
  Outcome out;
  out.body["semidirect"] = io::algebra_to_json(sd.algebra);
  out.text = "M x| A: " + label(sd.algebra) + "\n";
  add_validation(out, "axioms", validate_awb(sd.algebra));
  ValidationReport maps;
  for (const auto* f : {&sd.inject, &sd.project, &sd.section}) maps.merge(check_morphism(*f));
  add_validation(out, "split_extension_maps", maps);
  CheckList split;
  split.conclusion("section_splits", exact_equal(Matrix<S>(sd.project.matrix * sd.section.matrix),
                                                 act.actor.identity_matrix()));
  split.conclusion("exact", kernel(sd.project) == image(sd.inject) && is_injective(sd.inject));
  add_checks(out, "split_checks", split);
  return out;
}

template <class S>
void write_output(const std::optional<std::string>& path, const Json& j) {
  if (path) io::write_json_file(*path, j);
}

template <class S>
Outcome xmod_checks(const CrossedModule<S>& xm) {
  Outcome out;
  out.body["m"] = summary(xm.m());
  out.body["a"] = summary(xm.a());
  out.text = "mu: " + label(xm.m()) + " -> " + label(xm.a()) + "\n";
  add_validation(out, "mu_morphism", check_morphism(xm.mu));
  add_validation(out, "action", validate_action(xm.act));
  if (!out.pass) return out;
  add_validation(out, "xmod", validate_xmod(xm));
  if (!out.pass) return out;
  auto st = xmod_structure(xm);
  CheckList c;
  c.conclusion("kernel_central", st.kernel_central, "dim Ker mu " + std::to_string(st.kernel.dim()));
  c.conclusion("image_ideal", st.image_ideal, "dim Im mu " + std::to_string(st.image.dim()));
  c.conclusion("image_acts_trivially", st.image_acts_trivially);
  add_checks(out, "structure", c);
  add_validation(out, "semidirect_homs", semidirect_homs(xm).report);
  return out;
}

template <class S>
Outcome cmd_xmod(const std::string& mode, const std::string& path, const std::optional<std::string>& output) {
  if (mode == "check") {
    auto xm = io::xmod_from_json<S>(io::read_json_file(path), origin(path), loading(true));
    return xmod_checks(xm);
  }
  auto xm = io::xmod_from_json<S>(io::read_json_file(path), origin(path), loading());
  auto conv = xmod_to_cat1(xm);
  Outcome out;
  out.body["converted"] = io::cat1_to_json(conv.cat1);
  out.text = "R = M x| A: " + label(conv.cat1.r) + ", dim P " + std::to_string(conv.cat1.p.dim()) + "\n";
  add_validation(out, "cat1", validate_cat1(conv.cat1));
  auto rt = xmod_roundtrip(xm);
  add_validation(out, "roundtrip", rt.report);
  CheckList c;
  c.conclusion("roundtrip_invertible", rt.invertible);
  add_checks(out, "roundtrip_checks", c);
  write_output<S>(output, out.body["converted"]);
  return out;
}

template <class S>
Outcome cmd_cat1(const std::string& mode, const std::string& path, const std::optional<std::string>& output) {
  if (mode == "check") {
    auto c = io::cat1_from_json<S>(io::read_json_file(path), origin(path), loading(true));
    Outcome out;
    out.body["r"] = summary(c.r);
    out.text = "R " + label(c.r) + ", dim P " + std::to_string(c.p.dim()) + "\n";
    add_validation(out, "cat1", validate_cat1(c));
    return out;
  }
  auto c = io::cat1_from_json<S>(io::read_json_file(path), origin(path), loading());
  auto conv = cat1_to_xmod(c);
  Outcome out = xmod_checks(conv.xmod);
  out.body["converted"] = io::xmod_to_json(conv.xmod);
  auto rt = cat1_roundtrip(c);
  add_validation(out, "roundtrip", rt.report);
  CheckList k;
  k.conclusion("roundtrip_invertible", rt.invertible);
  add_checks(out, "roundtrip_checks", k);
  write_output<S>(output, out.body["converted"]);
  return out;
}

template <class S>
Outcome tensor_report(const MutualActions<S>& mut, bool include_structure) {
  Outcome out;
  out.body["m"] = summary(mut.m());
  out.body["n"] = summary(mut.n());
  out.text = "M " + label(mut.m()) + "\nN " + label(mut.n()) + "\n";
  add_validation(out, "m_on_n", validate_action(mut.m_on_n));
  add_validation(out, "n_on_m", validate_action(mut.n_on_m));
  if (!out.pass) return out;
  add_validation(out, "compatibility", check_compatibility(mut));
  if (!out.pass) return out;
  auto t = nonabelian_tensor(mut);
  out.body["tensor"] = Json{{"dim", t.awb.dim()},
                            {"generators", t.generator_dim()},
                            {"relation_instances", t.relation_vectors},
                            {"relation_rank", t.relation_rank()}};
  if (include_structure) out.body["tensor"]["algebra"] = io::algebra_to_json(t.awb);
  std::ostringstream os;
  os << "M (x) N: dim " << t.awb.dim() << " (" << t.generator_dim() << " generators, " << t.relation_vectors
     << " relation instances of rank " << t.relation_rank() << ")\n";
  out.text += os.str();
  // reaching here means product and bracket descended and the axioms hold
  add_validation(out, "tensor_axioms", validate_awb(t.awb));
  auto psi = psi_maps(t);
  add_validation(out, "psi_m", check_morphism(psi.psi_m));
  add_validation(out, "psi_n", check_morphism(psi.psi_n));
  auto xm = xmod_on_tensor(t);
  add_validation(out, "xmod_over_m", validate_xmod(xm.over_m));
  add_validation(out, "xmod_over_n", validate_xmod(xm.over_n));
  return out;
}

template <class S>
Outcome cmd_tensor(const std::string& m_path, const std::string& n_path, const std::string& actions_path) {
  auto m = io::load_algebra<S>(m_path, loading());
  auto n = io::load_algebra<S>(n_path, loading());
  auto mut = io::mutual_actions_from_json<S>(io::read_json_file(actions_path), m, n, origin(actions_path));
  return tensor_report(mut, true);
}

template <class S>
Outcome cmd_tensor_self(const std::string& path) {
  auto a = io::load_algebra<S>(path, loading());
  return tensor_report(self_mutual_actions(a), true);
}

template <class S>
void add_universality(Outcome& out, const std::string& name, const UceResult<S>& u, const CentralExtension<S>& ce) {
  auto r = universality_check(u, ce);
  out.body["universality"].push_back(Json{{"extension", name},
                                          {"source_dim", ce.phi.source.dim()},
                                          {"kernel_dim", ce.kernel.dim()},
                                          {"sections_differ", r.sections_differ},
                                          {"checks", io::checks_to_json(r.checks)}});
  out.text += "universality against " + name + " (dim " + std::to_string(ce.phi.source.dim()) + ")\n" +
              checks_text(r.checks);
  out.pass = out.pass && r.ok();
}

template <class S>
Outcome cmd_uce(const std::string& path, const std::optional<std::string>& against) {
  auto a = io::load_algebra<S>(path, loading());
  std::optional<CentralExtension<S>> ext;
  if (against) {
    auto phi = io::morphism_from_json<S>(io::read_json_file(*against), origin(*against), loading());
    if (!(phi.target == a)) throw PreconditionError(*against + ": the extension is not of " + path);
    ext = validate_central_extension(phi);
  }
  auto u = uce(a);
  Outcome out;
  out.body["algebra"] = summary(a);
  out.body["tensor_dim"] = u.tensor.awb.dim();
  out.body["kernel_dim"] = u.kernel.dim();
  out.body["h1_dim"] = u.h1_dim;
  out.body["kernel"] = io::subspace_to_json(u.kernel);
  out.body["psi"] = io::matrix_to_json(u.psi.matrix);
  std::ostringstream os;
  os << label(a) << "\nA (x) A: dim " << u.tensor.awb.dim() << ", Ker psi_A " << u.kernel.dim() << ", H_1 " << u.h1_dim
     << "\n";
  out.text = os.str();
  add_checks(out, "checks", u.checks);
  auto ia = ia_quotient(a);
  add_checks(out, "ia_quotient", ia.checks);
  out.body["universality"] = Json::array();
  if (ext) {
    add_universality(out, *against, u, *ext);
  } else {
    for (const auto& [name, ce] : central_extensions_of(u)) add_universality(out, name, u, ce);
  }
  return out;
}

template <class S>
Subspace<S> parse_ideal(const FiniteAwb<S>& a, const std::string& spec) {
  const Index d = a.dim();
  std::vector<Vector<S>> seeds;
  if (fs::is_regular_file(spec)) {
    auto j = io::read_json_file(spec);
    auto gens = j.is_object() && j.contains("generators") ? j["generators"] : j;
    io::Origin at = j.is_object() ? io::Origin{spec, "/generators"} : origin(spec);
    if (!gens.is_array()) throw InputError(at.describe() + ": expected an array of vectors");
    for (std::size_t k = 0; k < gens.size(); ++k)
      seeds.push_back(io::vector_from_json<S>(gens[k], d, a.field(), at.at(k)));
  } else {
    // "e0,e3" for basis vectors or "1,0,-1/2;0,1,0" for coordinate vectors
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
      if (group.empty()) continue;
      if (group[0] == 'e') {
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
          if (item.size() < 2 || item[0] != 'e') throw InputError("--ideal: bad basis name \"" + item + "\"");
          Index i = -1;
          try {
            i = std::stoll(item.substr(1));
          } catch (const std::exception&) {
          }
          if (i < 0 || i >= d) throw InputError("--ideal: no basis vector \"" + item + "\"");
          seeds.push_back(a.basis_vector(i));
        }
      } else {
        std::stringstream items(group);
        std::string item;
        Json coords = Json::array();
        while (std::getline(items, item, ',')) coords.push_back(item);
        seeds.push_back(io::vector_from_json<S>(coords, d, a.field(), io::Origin{"--ideal", ""}));
      }
    }
  }
  return ideal_closure(a, seeds);
}

template <class S>
Outcome cmd_four_term(const std::string& path, const std::string& ideal_spec) {
  auto a = io::load_algebra<S>(path, loading());
  auto m = parse_ideal(a, ideal_spec);
  auto r = four_term_sequence(a, m);
  if (!r.checks.hypotheses_hold()) {
    std::string msg = "four-term: hypotheses fail";
    if (!r.checks.passed("perfect")) msg = "four-term: the algebra is not perfect";
    throw PreconditionError(msg + "\n" + r.checks.describe());
  }
  Outcome out;
  out.body["algebra"] = summary(a);
  out.body["ideal"] = io::subspace_to_json(m);
  out.body["dims"] = Json{{"ker_psi_m", r.dim_ker_psi_m}, {"ker_psi", r.dim_ker_psi},   {"h1_a", r.h1_a},
                          {"h1_q", r.h1_q},               {"coker", r.coker_dim},      {"rank_k1", r.rank_k1},
                          {"rank_k2", r.rank_k2},         {"rank_delta", r.rank_delta}};
  std::ostringstream os;
  os << label(a) << ", ideal of dim " << m.dim() << "\n"
     << "Ker psi_M " << r.dim_ker_psi_m << " -> H_1(A) " << r.h1_a << " -> H_1(A/M) " << r.h1_q << " -> M/[[A,M]] "
     << r.coker_dim << " -> 0\n"
     << "ranks " << r.rank_k1 << ", " << r.rank_k2 << ", " << r.rank_delta << "\n";
  out.text = os.str();
  add_checks(out, "checks", r.checks);
  return out;
}

template <class S>
Outcome cmd_trivial_tensor(const std::string& m_path, const std::string& n_path) {
  auto m = io::load_algebra<S>(m_path, loading());
  auto n = io::load_algebra<S>(n_path, loading());
  auto r = trivial_tensor_check(m, n);
  Outcome out;
  out.body["m"] = summary(m);
  out.body["n"] = summary(n);
  out.body["dims"] = Json{{"m_ab", r.m_ab},
                          {"n_ab", r.n_ab},
                          {"tensor", r.tensor.awb.dim()},
                          {"expected", r.expected_dim},
                          {"blocks", r.block_dims},
                          {"expected_blocks", r.expected_block_dims}};
  std::ostringstream os;
  os << "M " << label(m) << "\nN " << label(n) << "\n"
     << "M (x) N: dim " << r.tensor.awb.dim() << ", 4 dim M^ab dim N^ab = " << r.expected_dim << "\n";
  out.text = os.str();
  add_checks(out, "checks", r.checks);
  return out;
}

// ---------------------------------------------------------------------------
// Fixture export

std::string slug(std::string s) {
  for (auto& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') ch = '_';
  return s;
}

template <class S>
void export_field(const fs::path& dir, const FieldSpec& f, const std::string& suffix) {
  namespace fx = fixtures;
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const Json& j) { io::write_json_file(dir / (name + suffix + ".json"), j); };
  for (const auto& a : fx::corpus<S>(f)) {
    if (a.dim() > 4 && suffix != "") continue;
    put(slug(a.name()), io::algebra_to_json(a));
  }
  if (suffix.empty()) {
    put("corrupted_idempotent", io::algebra_to_json(fx::corrupted_idempotent<S>(f)));
    put("corrupted_nonassociative", io::algebra_to_json(fx::corrupted_nonassociative<S>(f)));
    put("corrupted_anticommutator", io::algebra_to_json(fx::corrupted_anticommutator<S>(f)));
  }
  put("action_matrix_representation", io::action_to_json(fx::matrix_representation<S>(f)));
  for (const auto& [name, xm] : fx::xmod_corpus<S>(f)) {
    put("xmod_" + slug(name), io::xmod_to_json(xm));
    put("cat1_" + slug(name), io::cat1_to_json(xmod_to_cat1(xm).cat1));
  }
  auto t = fx::t_m2<S>(f);
  put("ce_t_m2_split1", io::morphism_to_json(fx::split_central_extension(t, 1)));
  put("ce_t_m2_identity", io::morphism_to_json(identity_morphism(t)));
  if (suffix.empty()) {
    auto s = fx::sl2_bracket<S>(f);
    put("ce_sl2_bracket_split2", io::morphism_to_json(fx::split_central_extension(s, 2)));
  }
  for (const auto& [name, mut] : fx::compatible_pairs<S>(f)) {
    if (name.rfind("ideals:", 0) != 0) continue;
    std::string base = "pair_" + slug(name.substr(7));
    put(base + "_m", io::algebra_to_json(mut.m()));
    put(base + "_n", io::algebra_to_json(mut.n()));
    put(base + "_actions", io::mutual_actions_to_json(mut));
  }
}

Outcome cmd_export(const std::string& dir) {
  export_field<Rational>(dir, FieldSpec::rationals(), "");
  export_field<ModP>(dir, FieldSpec::prime(5), ".gf5");
  Outcome out;
  out.body["directory"] = dir;
  out.text = "fixtures written to " + dir + "\n";
  return out;
}

// ---------------------------------------------------------------------------

int emit_error(const std::string& kind, const std::string& msg, int code) {
  std::cerr << "error: " << msg << "\n";
  if (g_opts.json) {
    Json r{{"schema_version", io::report_schema_version}, {"status", "error"}, {"error", kind}, {"message", msg}};
    std::cout << io::dump(r);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finite-dimensional algebras with bracket"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_opts.json, "Print the machine-readable JSON report");
  app.add_flag("--allow-invalid", g_opts.allow_invalid, "Load inputs without validating their axioms");

  std::string p1, p2, actions, ideal, mode;
  std::optional<std::string> against, output;
  int max_degree = 1;
  long long max_chain_dim = 100000;
  std::function<Outcome()> run;

  auto* check = app.add_subcommand("check", "Validate the axioms of an algebra");
  check->add_option("algebra", p1)->required();
  check->callback([&] { run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_check<S>(p1); }); }; });

  auto* inv = app.add_subcommand("invariants", "Center, derived algebra, perfectness and H_0");
  inv->add_option("algebra", p1)->required();
  inv->callback([&] {
    run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_invariants<S>(p1); }); };
  });

  auto* hom = app.add_subcommand("homology", "Homology of the chain complex up to a degree");
  hom->add_option("algebra", p1)->required();
  hom->add_option("--max-degree", max_degree, "Highest degree computed")->capture_default_str();
  hom->add_option("--max-chain-dim", max_chain_dim, "Refuse chain spaces larger than this")->capture_default_str();
  hom->callback([&] {
    run = [&] {
      return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_homology<S>(p1, max_degree, max_chain_dim); });
    };
  });

  auto* action = app.add_subcommand("action", "Actions");
  action->require_subcommand(1);
  auto* action_check = action->add_subcommand("check", "Validate the action equations");
  action_check->add_option("action", p1)->required();
  action_check->callback([&] {
    run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_action_check<S>(p1); }); };
  });

  auto* sd = app.add_subcommand("semidirect", "Semidirect product of an action");
  sd->add_option("action", p1)->required();
  sd->callback([&] {
    run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_semidirect<S>(p1); }); };
  });

  auto* xmod = app.add_subcommand("xmod", "Crossed modules");
  xmod->add_option("mode", mode, "check or to-cat1")->required()->check(CLI::IsMember({"check", "to-cat1"}));
  xmod->add_option("xmod", p1)->required();
  xmod->add_option("-o,--output", output, "Write the converted object to this file");
  xmod->callback([&] {
    run = [&] {
      return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_xmod<S>(mode, p1, output); });
    };
  });

  auto* cat1 = app.add_subcommand("cat1", "cat1-algebras");
  cat1->add_option("mode", mode, "check or to-xmod")->required()->check(CLI::IsMember({"check", "to-xmod"}));
  cat1->add_option("cat1", p1)->required();
  cat1->add_option("-o,--output", output, "Write the converted object to this file");
  cat1->callback([&] {
    run = [&] {
      return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_cat1<S>(mode, p1, output); });
    };
  });

  auto* tensor = app.add_subcommand("tensor", "Non-abelian tensor product of M and N");
  tensor->add_option("M", p1)->required();
  tensor->add_option("N", p2)->required();
  tensor->add_option("--actions", actions, "Mutual actions file")->required();
  tensor->callback([&] {
    run = [&] {
      return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_tensor<S>(p1, p2, actions); });
    };
  });

  auto* tself = app.add_subcommand("tensor-self", "A (x) A with the actions by the operations of A");
  tself->add_option("algebra", p1)->required();
  tself->callback([&] {
    run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_tensor_self<S>(p1); }); };
  });

  auto* uce_cmd = app.add_subcommand("uce", "Universal central extension of a perfect algebra");
  uce_cmd->add_option("algebra", p1)->required();
  uce_cmd->add_option("--against", against, "Central extension (morphism file) to test universality against");
  uce_cmd->callback([&] {
    run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_uce<S>(p1, against); }); };
  });

  auto* four = app.add_subcommand("four-term", "Four-term homology sequence of an ideal");
  four->add_option("algebra", p1)->required();
  four->add_option("--ideal", ideal, "Generators: a JSON file, \"e0,e2\" or \"1,0,0;0,1,0\"")->required();
  four->callback([&] {
    run = [&] { return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_four_term<S>(p1, ideal); }); };
  });

  auto* triv = app.add_subcommand("trivial-tensor", "M (x) N for trivial actions against 4 dim M^ab dim N^ab");
  triv->add_option("M", p1)->required();
  triv->add_option("N", p2)->required();
  triv->callback([&] {
    run = [&] {
      return with_field_of(p1, [&]<class S>(std::type_identity<S>) { return cmd_trivial_tensor<S>(p1, p2); });
    };
  });

  auto* exp = app.add_subcommand("export-fixtures", "Write the fixture corpus as JSON files");
  exp->add_option("directory", p1)->required();
  exp->callback([&] { run = [&] { return cmd_export(p1); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Outcome out = run();
    if (g_opts.json) {
      auto* sub = app.get_subcommands().front();
      std::string command = sub->get_name();
      for (auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
      if (!mode.empty()) command += " " + mode;
      std::cout << io::dump(io::make_report(command, out.pass, out.body));
    } else {
      std::cout << out.text << (out.pass ? "PASS" : "FAIL") << "\n";
    }
    return out.pass ? 0 : 1;
  } catch (const InputError& e) {
    return emit_error("input", e.what(), 2);
  } catch (const PreconditionError& e) {
    return emit_error("precondition", e.what(), 2);
  } catch (const VerificationFailure& e) {
    return emit_error("verification", e.what(), 1);
  } catch (const std::invalid_argument& e) {
    return emit_error("input", e.what(), 2);
  }
}
