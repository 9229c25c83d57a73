// Acceptance suite: one PASS/FAIL line per criterion. All checks are exact.
//
//   acceptance [--report <file>] [--no-rerun]
//
// Criterion 14 reruns the binary as a child process with --no-rerun and
// compares the two JSON reports byte for byte.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "awb/central.hpp"
#include "awb/fixtures.hpp"
#include "awb/homology.hpp"
#include "awb/io.hpp"

using namespace awb;
using io::Json;
namespace fx = awb::fixtures;
namespace fs = std::filesystem;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime(5);

struct Result {
  bool pass = true;
  std::string detail;
  Json data = Json::object();
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::string str(Index v) { return std::to_string(v); }

/// Every valid algebra shipped in code and as files, over Q and GF(5).
template <class S>
std::vector<FiniteAwb<S>> all_fixtures(const FieldSpec& f) {
  return fx::corpus<S>(f);
}

// 1 ------------------------------------------------------------------------
Result axiom_suite() {
  Result r;
  std::size_t valid = 0;
  for (const auto& a : all_fixtures<Rational>(Q)) {
    r.require(validate_awb(a).valid(), a.name() + " over Q");
    ++valid;
  }
  for (const auto& a : all_fixtures<ModP>(F5)) {
    r.require(validate_awb(a).valid(), a.name() + " over GF(5)");
    ++valid;
  }
  // the shipped files, loaded without validation and checked here
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(AWB_FIXTURE_DIR)) {
    auto j = io::read_json_file(entry.path());
    if (j.value("kind", "") != "algebra") continue;
    const auto name = entry.path().filename().string();
    const bool corrupted = name.rfind("corrupted_", 0) == 0;
    io::Origin o{entry.path(), ""};
    bool ok = io::field_of(j, o).kind() == FieldSpec::Kind::rationals
                  ? validate_awb(io::algebra_from_json<Rational>(j, o, {true})).valid()
                  : validate_awb(io::algebra_from_json<ModP>(j, o, {true})).valid();
    r.require(ok != corrupted, name);
    ++files;
  }
  // witnesses derived by hand:
  //   x x = x, [x,x] = x: [xx,x] = x but [x,x]x + x[x,x] = 2x
  //   xy = y, yx = x: (xy)x = x but x(yx) = xx = 0
  //   [a,b] = ab + ba on M_2 at e11: [e11,e11] = 2 e11, right side 4 e11
  struct Expected {
    FiniteAwb<Rational> a;
    Witness w;
  };
  const std::vector<Expected> corrupted = {
      {fx::corrupted_idempotent<Rational>(Q), {"bracket_identity", {0, 0, 0}, "[1]", "[2]"}},
      {fx::corrupted_nonassociative<Rational>(Q), {"associativity", {0, 1, 0}, "[1, 0]", "[0, 0]"}},
      {fx::corrupted_anticommutator<Rational>(Q), {"bracket_identity", {0, 0, 0}, "[2, 0, 0, 0]", "[4, 0, 0, 0]"}}};
  Json witnesses = Json::array();
  for (const auto& [a, w] : corrupted) {
    auto v = validate_awb(a);
    bool found = false;
    for (const auto& x : v.witnesses)
      if (x.check == w.check && x.indices == w.indices) {
        found = true;
        r.require(x.lhs == w.lhs && x.rhs == w.rhs, a.name() + " witness values " + x.lhs + " / " + x.rhs);
      }
    r.require(!v.valid() && found, a.name() + " expected witness " + w.check);
    witnesses.push_back(io::validation_to_json(v, 3));
  }
  r.data = Json{{"valid_in_code", valid}, {"files_checked", files}, {"corrupted", witnesses}};
  r.detail = str(valid) + " built-in fixtures and " + str(files) + " files; 3 corrupted fixtures fail at the expected triples";
  return r;
}

// 2 ------------------------------------------------------------------------
template <class S>
void h0_over(Result& r, const FieldSpec& f, Json& data) {
  for (const auto& a : all_fixtures<S>(f)) {
    auto h = h0_isomorphism_check(a);
    r.require(h.image_d1 == h.derived && h.h0_dim == h.abelianization_dim && h.ok(), a.name() + " " + f.to_string());
    data.push_back(Json{{"algebra", a.name()}, {"field", f.to_string()}, {"h0", h.h0_dim}, {"ab", h.abelianization_dim}});
  }
}

Result h0_identification() {
  Result r;
  Json data = Json::array();
  h0_over<Rational>(r, Q, data);
  h0_over<ModP>(r, F5, data);
  r.data = data;
  r.detail = "Im d_1 = [[A,A]] and dim H_0 = dim A^ab on " + str(data.size()) + " fixture instances";
  return r;
}

// 3 ------------------------------------------------------------------------
template <class S>
void complex_over(Result& r, const FieldSpec& f, Json& data) {
  for (const auto& a : all_fixtures<S>(f)) {
    try {
      auto c = build_complex(a, 3);
      bool zero = true;
      for (Index n = 1; n <= 3; ++n) zero = zero && (c.d(n - 1) * c.d(n)).is_zero();
      r.require(zero, a.name() + " " + f.to_string());
      data.push_back(Json{{"algebra", a.name()}, {"field", f.to_string()}, {"dims", c.dims}});
    } catch (const VerificationFailure& e) {
      r.require(false, a.name() + ": " + e.what());
    }
  }
}

Result complex_validity() {
  Result r;
  Json data = Json::array();
  complex_over<Rational>(r, Q, data);
  complex_over<ModP>(r, F5, data);
  r.data = data;
  r.detail = "d_{n-1} d_n = 0 for n <= 3 on " + str(data.size()) + " fixture instances";
  return r;
}

// 4 ------------------------------------------------------------------------
Result hand_homology() {
  Result r;
  Json data = Json::object();
  for (Index d = 1; d <= 3; ++d) {
    auto h = homology(fx::abelian<Rational>(Q, d), 1);
    r.require(h.dimension == 2 * d * d, "abelian" + str(d) + " gives " + str(h.dimension));
    data["abelian" + str(d)] = h.dimension;
  }
  // Ker d_1 = all of C_1 but x (x) x; Im d_2 = <y(x)x - x(x)y, y(x)y, y o x, y o y>
  auto n2 = homology(fx::n2<Rational>(Q), 1);
  r.require(n2.dimension == 3 && n2.cycles_dim == 7 && n2.boundaries_dim == 4, "N2 gives " + str(n2.dimension));
  auto n2p = homology(fx::n2<ModP>(F5), 1);
  r.require(n2p.dimension == 3, "N2 over GF(5)");
  data["n2"] = n2.dimension;
  r.data = data;
  r.detail = "H_1(abelian d) = 2, 8, 18; H_1(N2) = 3 (7 cycles, 4 boundaries)";
  return r;
}

// 5 ------------------------------------------------------------------------
Result trivial_action_tensor() {
  Result r;
  Json data = Json::array();
  for (const auto& [name, mut] : fx::abelian_trivial_pairs<Rational>(Q)) {
    auto t = trivial_tensor_check(mut.m(), mut.n());
    r.require(t.ok() && t.tensor.awb.is_abelian() && t.tensor.awb.dim() == t.expected_dim, name);
    data.push_back(Json{{"pair", name}, {"dim", t.tensor.awb.dim()}, {"expected", t.expected_dim}});
  }
  r.data = data;
  r.require(data.size() >= 5, "fewer than 5 pairs");
  r.detail = str(data.size()) + " pairs with dim = 4 dim M^ab dim N^ab and zero operations";
  return r;
}

// 6, 7 ---------------------------------------------------------------------
struct TensorRun {
  Result structure, psi;
};

template <class S>
void tensor_pairs(TensorRun& out, const FieldSpec& f, Json& d6, Json& d7) {
  for (const auto& [name, mut] : fx::compatible_pairs<S>(f)) {
    const std::string tag = name + " " + f.to_string();
    try {
      out.structure.require(check_compatibility(mut).valid(), tag + " compatibility");
      auto t = nonabelian_tensor(mut);  // throws when an operation does not descend
      out.structure.require(validate_awb(t.awb).valid(), tag + " axioms");
      d6.push_back(Json{{"pair", tag}, {"dim", t.awb.dim()}, {"relation_rank", t.relation_rank()}});

      auto psi = psi_maps(t);  // throws when psi does not vanish on a relation
      auto xm = xmod_on_tensor(t);
      bool ok = check_morphism(psi.psi_m).valid() && check_morphism(psi.psi_n).valid() &&
                validate_xmod(xm.over_m).valid() && validate_xmod(xm.over_n).valid();
      out.psi.require(ok, tag);
      d7.push_back(Json{{"pair", tag}, {"rank_psi_m", rank(psi.psi_m.matrix)}, {"rank_psi_n", rank(psi.psi_n.matrix)}});
    } catch (const std::exception& e) {
      out.structure.require(false, tag + ": " + e.what());
      out.psi.require(false, tag + ": not reached");
    }
  }
}

TensorRun tensor_criteria() {
  TensorRun run;
  Json d6 = Json::array(), d7 = Json::array();
  tensor_pairs<Rational>(run, Q, d6, d7);
  tensor_pairs<ModP>(run, F5, d6, d7);
  run.structure.data = d6;
  run.psi.data = d7;
  run.structure.detail = "operations descend and the axioms hold on M (x) N for " + str(d6.size()) + " compatible pairs";
  run.psi.detail = "psi_M, psi_N vanish on relations, are morphisms, and give crossed modules for " + str(d7.size()) +
                   " pairs";
  return run;
}

// 8 ------------------------------------------------------------------------
template <class S>
void uce_case(Result& r, const FiniteAwb<S>& a, Json& data) {
  auto u = uce(a);
  const std::string tag = a.name() + " " + a.field().to_string();
  for (const char* c : {"surjective", "kernel_central", "tensor_perfect", "kernel_is_h1"})
    r.require(u.checks.passed(c), tag + " " + c);
  data.push_back(Json{{"algebra", tag}, {"ker_psi", u.kernel.dim()}, {"h1", u.h1_dim}, {"tensor_dim", u.tensor.awb.dim()}});
}

Result uce_cross_validation() {
  Result r;
  Json data = Json::array();
  uce_case(r, fx::t_m2<Rational>(Q), data);
  uce_case(r, fx::t_m2_squared<Rational>(Q), data);
  uce_case(r, fx::t_m2<ModP>(F5), data);
  uce_case(r, fx::t_m2_squared<ModP>(F5), data);
  // zero product with the sl2 bracket: perfect with a nonzero kernel
  uce_case(r, fx::sl2_bracket<Rational>(Q), data);
  uce_case(r, fx::sl2_bracket<ModP>(F5), data);
  r.data = data;
  std::ostringstream os;
  os << "dim Ker psi_A = dim H_1:";
  for (const auto& d : data) os << " " << d["algebra"].get<std::string>() << " " << d["ker_psi"] << "=" << d["h1"] << ";";
  r.detail = os.str();
  return r;
}

// 9 ------------------------------------------------------------------------
Result universality() {
  Result r;
  Json data = Json::array();
  for (const auto& a : fx::perfect_corpus<Rational>(Q)) {
    auto u = uce(a);
    auto exts = central_extensions_of(u);
    r.require(exts.size() >= 2, a.name() + " has fewer than 2 extensions");
    for (const auto& [name, ce] : exts) {
      auto rep = universality_check(u, ce);
      r.require(rep.ok(), a.name() + " against " + name);
      if (ce.kernel.dim() > 0) r.require(rep.sections_differ, a.name() + " against " + name + ": sections coincide");
      data.push_back(Json{{"algebra", a.name()}, {"extension", name}, {"kernel", ce.kernel.dim()},
                          {"sections_differ", rep.sections_differ}});
    }
  }
  r.data = data;
  r.detail = str(data.size()) + " (algebra, extension) cases; alpha unique under a change of section";
  return r;
}

// 10 -----------------------------------------------------------------------
Result ia_model() {
  Result r;
  Json data = Json::array();
  for (const auto& a : fx::perfect_corpus<Rational>(Q)) {
    auto ia = ia_quotient(a);
    r.require(ia.perfect && ia.checks.ok(), a.name());
    data.push_back(Json{{"algebra", a.name()}, {"dim", ia.dim()}});
  }
  for (const auto& a : fx::perfect_corpus<ModP>(F5)) {
    auto ia = ia_quotient(a);
    r.require(ia.perfect && ia.checks.ok(), a.name() + " GF(5)");
  }
  r.data = data;
  r.detail = "(A(x)A (+) A(x)A)/I_A -> A (x) A bijective and compatible with psi on the perfect fixtures";
  return r;
}

// 11 -----------------------------------------------------------------------
Result exact_sequences() {
  Result r;
  auto t = fx::t_m2<Rational>(Q);
  auto sq = fx::t_m2_squared<Rational>(Q);
  Matrix<Rational> first = Matrix<Rational>::Zero(4, 8);
  for (Index i = 0; i < 4; ++i) first(i, i) = Rational(1);
  auto m = Subspace<Rational>::span_rows(first);

  auto re = right_exactness_check(fx::summand_sequence(t));
  r.require(re.ok(), "right exactness: " + re.checks.describe());
  auto is = ideal_tensor_sequence(sq, m);
  r.require(is.ok(), "ideal sequence: " + is.checks.describe());
  auto ft = four_term_sequence(sq, m);
  r.require(ft.ok(), "four-term: " + ft.checks.describe());

  // the same checks where the tensor products and H_1 do not vanish
  auto re_n2 = right_exactness_check(fx::summand_sequence(fx::n2<Rational>(Q)));
  r.require(re_n2.ok() && re_n2.dim1 > 0, "right exactness over N2 (+) N2");
  auto b = fx::sl2_bracket<Rational>(Q);
  auto ds = direct_sum(b, b);
  auto ft_sl2 = four_term_sequence(ds.algebra, image(ds.inject_first.matrix));
  r.require(ft_sl2.ok() && ft_sl2.h1_q > 0, "four-term on sl2 (+) sl2");

  r.data = Json{{"right_exactness", {{"dims", {re.dim1, re.dim2, re.dim3}}, {"ranks", {re.rank_f, re.rank_g}}}},
                {"ideal_sequence", {{"dims", {is.dim_ma, is.dim_am, is.dim_aa, is.dim_qq}}, {"ranks", {is.rank_sigma, is.rank_tau}}}},
                {"four_term", {{"h1_a", ft.h1_a}, {"h1_q", ft.h1_q}, {"coker", ft.coker_dim}, {"ker_psi_m", ft.dim_ker_psi_m}}},
                {"right_exactness_n2", {{"dims", {re_n2.dim1, re_n2.dim2, re_n2.dim3}}}},
                {"four_term_sl2", {{"h1_a", ft_sl2.h1_a}, {"h1_q", ft_sl2.h1_q}, {"rank_k1", ft_sl2.rank_k1}}}};
  std::ostringstream os;
  os << "T(M2)(+)T(M2), M first factor: M(x)N dims " << re.dim1 << " " << re.dim2 << " " << re.dim3
     << ", ideal sequence ranks " << is.rank_sigma << "/" << is.rank_tau << ", four-term H_1 " << ft.h1_a << " -> "
     << ft.h1_q << "; extra: N2 pair dims " << re_n2.dim1 << " " << re_n2.dim2 << " " << re_n2.dim3
     << ", sl2(+)sl2 H_1 " << ft_sl2.h1_a << " -> " << ft_sl2.h1_q;
  r.detail = os.str();
  return r;
}

// 12 -----------------------------------------------------------------------
template <class S>
void roundtrips(Result& r, const FieldSpec& f, Json& data) {
  for (const auto& [name, xm] : fx::xmod_corpus<S>(f)) {
    const std::string tag = name + " " + f.to_string();
    auto a = xmod_roundtrip(xm);
    r.require(a.report.valid() && a.invertible, tag + " xmod -> cat1 -> xmod");
    auto c = xmod_to_cat1(xm).cat1;
    auto b = cat1_roundtrip(c);
    r.require(b.report.valid() && b.invertible, tag + " cat1 -> xmod -> cat1");
    data.push_back(Json{{"xmod", tag}, {"r_dim", c.r.dim()}, {"p_dim", c.p.dim()}});
  }
}

Result cat1_equivalence() {
  Result r;
  Json data = Json::array();
  roundtrips<Rational>(r, Q, data);
  roundtrips<ModP>(r, F5, data);
  // the shipped cat1 files
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(AWB_FIXTURE_DIR)) {
    if (entry.path().filename().string().rfind("cat1_", 0) != 0) continue;
    auto j = io::read_json_file(entry.path());
    io::Origin o{entry.path(), ""};
    bool ok = false;
    if (io::field_of(j, o).kind() == FieldSpec::Kind::rationals) {
      auto rt = cat1_roundtrip(io::cat1_from_json<Rational>(j, o));
      ok = rt.report.valid() && rt.invertible;
    } else {
      auto rt = cat1_roundtrip(io::cat1_from_json<ModP>(j, o));
      ok = rt.report.valid() && rt.invertible;
    }
    r.require(ok, entry.path().filename().string());
    ++files;
  }
  r.data = data;
  r.detail = "both round trips certified on " + str(data.size()) + " crossed modules and " + str(files) + " cat1 files";
  return r;
}

// 13 -----------------------------------------------------------------------
Result hochschild() {
  Result r;
  Json data = Json::array();
  std::vector<AssociativeAlgebra<Rational>> algebras;
  for (Index d = 1; d <= 3; ++d) {
    auto z = fx::zero_algebra<Rational>(Q, d);
    z.name = "abelian" + str(d);
    algebras.push_back(z);
  }
  algebras.push_back(fx::matrix_algebra_2<Rational>(Q));
  algebras.push_back(fx::dual_numbers<Rational>(Q));
  std::ostringstream os;
  for (const auto& a : algebras) {
    auto h = hochschild_comparison(a);
    r.require(h.checks.passed("chain_map"), a.name + " chain map");
    r.require(h.checks.passed("iso_at_0"), a.name + " iso at 0");
    const auto& d1 = h.degrees.at(1);
    r.require(h.checks.passed("epi_at_1"), a.name + " epi at 1: rank " + str(d1.rank) + " onto H_1 of dim " +
                                               str(d1.awb_dim));
    data.push_back(Json{{"algebra", a.name},
                        {"n0", {{"hoch", h.degrees[0].hochschild_dim}, {"awb", h.degrees[0].awb_dim}, {"rank", h.degrees[0].rank}}},
                        {"n1", {{"hoch", d1.hochschild_dim}, {"awb", d1.awb_dim}, {"rank", d1.rank}}}});
    os << a.name << " " << d1.rank << "/" << d1.awb_dim << "; ";
  }
  r.data = data;
  r.detail = "rank of the degree-1 map onto H_1: " + os.str();
  return r;
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  std::string title;
  Result result;
  double seconds;
};

}  // namespace

int main(int argc, char** argv) {
  std::string report_path;
  bool rerun = true;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else if (a == "--no-rerun") {
      rerun = false;
    } else {
      std::cerr << "usage: acceptance [--report <file>] [--no-rerun]\n";
      return 2;
    }
  }

  std::vector<Criterion> done;
  auto run = [&](int id, const std::string& title, const std::function<Result()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    done.push_back({id, title, r, s});
    if (rerun) {
      std::cout << "criterion " << (id < 10 ? " " : "") << id << " " << (r.pass ? "PASS" : "FAIL") << "  " << title
                << ": " << r.detail << "\n";
      for (const auto& f : r.failures) std::cout << "      failed: " << f << "\n";
      std::cout.flush();
    }
  };

  run(1, "axiom suite", axiom_suite);
  run(2, "H_0 identification", h0_identification);
  run(3, "complex validity", complex_validity);
  run(4, "hand-derived homology", hand_homology);
  run(5, "trivial-action tensor", trivial_action_tensor);
  TensorRun tr;
  bool tensors_done = false;
  auto tensors = [&] {
    if (!tensors_done) tr = tensor_criteria();
    tensors_done = true;
  };
  run(6, "structure of M (x) N", [&] { tensors(); return tr.structure; });
  run(7, "psi maps and crossed modules", [&] { tensors(); return tr.psi; });
  run(8, "UCE cross-validation", uce_cross_validation);
  run(9, "universality", universality);
  run(10, "I_A model", ia_model);
  run(11, "exact sequences", exact_sequences);
  run(12, "cat1 equivalence", cat1_equivalence);
  run(13, "Hochschild comparison", hochschild);

  Json report = Json::object();
  report["schema_version"] = io::report_schema_version;
  report["families"] = io::family_counts_json();
  report["criteria"] = Json::array();
  for (const auto& c : done)
    report["criteria"].push_back(Json{{"id", c.id},
                                      {"title", c.title},
                                      {"pass", c.result.pass},
                                      {"detail", c.result.detail},
                                      {"failures", c.result.failures},
                                      {"data", c.result.data}});
  const std::string text = io::dump(report);
  if (!report_path.empty()) std::ofstream(report_path, std::ios::binary) << text;
  if (!rerun) {
    if (report_path.empty()) std::cout << text;
    return 0;
  }

  // 14: a second, independent run of criteria 1..13 in a child process
  auto t0 = std::chrono::steady_clock::now();
  Result det;
  auto first = fs::temp_directory_path() / "awb_acceptance_first.json";
  auto second = fs::temp_directory_path() / "awb_acceptance_second.json";
  std::ofstream(first, std::ios::binary) << text;
  std::string cmd = "'" + std::string(argv[0]) + "' --no-rerun --report '" + second.string() + "'";
  int status = std::system(cmd.c_str());
  det.require(status == 0, "child run exited with status " + std::to_string(status));
  std::ifstream in(second, std::ios::binary);
  std::string other((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  det.require(other == text, "reports differ");
  det.detail = "two runs produce byte-identical JSON reports (" + std::to_string(text.size()) + " bytes)";
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  done.push_back({14, "determinism", det, s});
  std::cout << "criterion 14 " << (det.pass ? "PASS" : "FAIL") << "  determinism: " << det.detail << "\n";
  for (const auto& f : det.failures) std::cout << "      failed: " << f << "\n";

  int failed = 0;
  std::cout << "\ntimings:";
  for (const auto& c : done) {
    failed += !c.result.pass;
    std::cout << " " << c.id << ":" << static_cast<int>(c.seconds + 0.5) << "s";
  }
  std::cout << "\n" << (done.size() - failed) << " of " << done.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
