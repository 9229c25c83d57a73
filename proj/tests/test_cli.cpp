#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "awb/io.hpp"

using awb::io::Json;
namespace fs = std::filesystem;

namespace {

const fs::path cli = AWB_CLI_PATH;
const fs::path fixture_dir = AWB_FIXTURE_DIR;

struct Run {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fx(const std::string& name) { return (fixture_dir / name).string(); }

Run run(const std::string& args) {
  auto err_file = fs::temp_directory_path() / "awb_test_cli_stderr.txt";
  std::string cmd = "'" + cli.string() + "' " + args + " 2>'" + err_file.string() + "'";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_text(err_file);
  return r;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("check " + fx("t_m2.json")).code == 0);
  CHECK(run("check " + fx("poisson_truncated.gf5.json")).code == 0);
  for (const char* bad : {"corrupted_idempotent.json", "corrupted_nonassociative.json", "corrupted_anticommutator.json"}) {
    CAPTURE(bad);
    auto r = run("check " + fx(bad) + " --json");
    CHECK(r.code == 1);
    auto j = r.json();
    CHECK(j["status"] == "fail");
    CHECK(j["axioms"]["witness_count"].get<int>() > 0);
  }
  // invalid algebras cannot be used elsewhere without --allow-invalid
  CHECK(run("invariants " + fx("corrupted_idempotent.json")).code == 1);
  CHECK(run("--allow-invalid invariants " + fx("corrupted_idempotent.json")).code != 2);

  auto n2 = run("uce " + fx("n2.json"));
  CHECK(n2.code == 2);
  CHECK(n2.err.find("not perfect") != std::string::npos);

  CHECK(run("check /nonexistent/file.json").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("malformed files report the location") {
  auto dir = fs::temp_directory_path() / "awb_test_cli";
  fs::create_directories(dir);
  std::ofstream(dir / "truncated.json") << "{\n  \"dim\": 1,\n";
  auto r = run("check " + (dir / "truncated.json").string() + " --json");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.json()["error"] == "input");

  auto j = awb::io::read_json_file(fixture_dir / "n2.json");
  j["bracket"][0][1][0] = 3;
  awb::io::write_json_file(dir / "number.json", j);
  r = run("check " + (dir / "number.json").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("/bracket/0/1/0") != std::string::npos);
}

TEST_CASE("uce reports agree with homology") {
  for (const char* name : {"t_m2.json", "t_m2_sq.json", "sl2_bracket.json", "t_m2.gf5.json", "sl2_bracket.gf5.json"}) {
    CAPTURE(name);
    auto r = run("uce " + fx(name) + " --json");
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["status"] == "pass");
    CHECK(j["kernel_dim"] == j["h1_dim"]);
    CHECK(j["families"]["tensor_relations"]["swapped_new"] == 6);
    CHECK(j["universality"].size() >= 4);
  }
  CHECK(run("uce " + fx("sl2_bracket.json") + " --json").json()["kernel_dim"] == 7);

  auto against = run("uce " + fx("sl2_bracket.json") + " --against " + fx("ce_sl2_bracket_split2.json") + " --json");
  CHECK(against.code == 0);
  CHECK(against.json()["universality"].size() == 1);
  CHECK(run("uce " + fx("t_m2.json") + " --against " + fx("ce_t_m2_split1.json")).code == 0);
  // an extension of another algebra
  CHECK(run("uce " + fx("t_m2.json") + " --against " + fx("ce_sl2_bracket_split2.json")).code == 2);
}

TEST_CASE("invariants and homology") {
  auto j = run("invariants " + fx("n2.json") + " --json").json();
  CHECK(j["dims"]["h0"] == 1);
  CHECK(j["dims"]["center"] == 1);
  CHECK(j["perfect"] == false);
  CHECK(run("invariants " + fx("t_m2.json") + " --json").json()["perfect"] == true);

  auto h = run("homology " + fx("n2.json") + " --max-degree 1 --json");
  CHECK(h.code == 0);
  CHECK(h.json()["homology"][1]["dim"] == 3);
  CHECK(h.json()["chain_dims"] == Json::array({2, 8, 16}));
  CHECK(run("homology " + fx("abelian2.json") + " --json").json()["homology"][1]["dim"] == 8);
  CHECK(run("homology " + fx("t_m2_sq.json") + " --max-degree 4").code == 2);
}

TEST_CASE("actions, semidirect products, crossed modules and cat1") {
  CHECK(run("action check " + fx("action_matrix_representation.json")).code == 0);
  auto sd = run("semidirect " + fx("action_matrix_representation.json") + " --json");
  CHECK(sd.code == 0);
  CHECK(sd.json()["semidirect"]["dim"] == 8);

  auto dir = fs::temp_directory_path() / "awb_test_cli";
  fs::create_directories(dir);
  for (const auto& entry : fs::directory_iterator(fixture_dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("xmod_", 0) == 0) {
      CAPTURE(name);
      CHECK(run("xmod check " + entry.path().string()).code == 0);
      auto out = dir / ("to_" + name);
      CHECK(run("xmod to-cat1 " + entry.path().string() + " -o " + out.string()).code == 0);
      CHECK(run("cat1 check " + out.string()).code == 0);
      CHECK(run("cat1 to-xmod " + out.string()).code == 0);
    }
    if (name.rfind("cat1_", 0) == 0) {
      CAPTURE(name);
      CHECK(run("cat1 check " + entry.path().string()).code == 0);
      CHECK(run("cat1 to-xmod " + entry.path().string()).code == 0);
    }
  }
  // a cat1 file with s and t exchanged for the zero map
  auto c = awb::io::read_json_file(fixture_dir / "cat1_identity.json");
  for (auto& row : c["s"])
    for (auto& x : row) x = "0";
  awb::io::write_json_file(dir / "bad_cat1.json", c);
  auto bad = run("cat1 check " + (dir / "bad_cat1.json").string() + " --json");
  CHECK(bad.code == 1);
  CHECK(bad.json()["cat1"]["witness_count"].get<int>() > 0);
  CHECK(run("cat1 to-xmod " + (dir / "bad_cat1.json").string()).code == 1);
  CHECK(run("xmod sideways " + fx("xmod_identity.json")).code == 2);
}

TEST_CASE("tensor products") {
  for (const auto& entry : fs::directory_iterator(fixture_dir)) {
    const auto name = entry.path().filename().string();
    const auto pos = name.find("_actions");
    if (name.rfind("pair_", 0) != 0 || pos == std::string::npos) continue;
    CAPTURE(name);
    const auto base = name.substr(0, pos), suffix = name.substr(pos + 8);
    auto r = run("tensor " + fx(base + "_m" + suffix) + " " + fx(base + "_n" + suffix) + " --actions " +
                 entry.path().string() + " --json");
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["compatibility"]["valid"] == true);
    CHECK(j["tensor"]["generators"] == 4 * j["m"]["dim"].get<int>() * j["n"]["dim"].get<int>());
  }
  auto s = run("tensor-self " + fx("n2.json") + " --json");
  CHECK(s.code == 0);
  CHECK(s.json()["tensor"]["generators"] == 16);

  // swapped factors do not match the action tensors
  CHECK(run("tensor " + fx("pair_n2_square_all_n.json") + " " + fx("pair_n2_square_all_m.json") + " --actions " +
            fx("pair_n2_square_all_actions.json"))
            .code == 2);

  CHECK(run("trivial-tensor " + fx("abelian2.json") + " " + fx("abelian3.json")).code == 0);
  auto t = run("trivial-tensor " + fx("n2.json") + " " + fx("abelian1.json") + " --json");
  CHECK(t.code == 1);
  CHECK(t.json()["dims"]["tensor"] == 5);
  CHECK(t.json()["dims"]["expected"] == 4);
}

TEST_CASE("four-term sequence") {
  auto by_name = run("four-term " + fx("t_m2_sq.json") + " --ideal e0,e1,e2,e3 --json");
  CHECK(by_name.code == 0);
  auto by_coords = run("four-term " + fx("t_m2_sq.json") + " --ideal '1,0,0,0,0,0,0,0;0,0,0,1,0,0,0,0' --json");
  CHECK(by_coords.code == 0);
  // both generate the first summand
  CHECK(by_name.json()["ideal"] == by_coords.json()["ideal"]);
  CHECK(by_name.json()["ideal"]["basis"].size() == 4);
  CHECK(run("four-term " + fx("n2.json") + " --ideal e1").code == 2);
  CHECK(run("four-term " + fx("t_m2.json") + " --ideal e9").code == 2);
  CHECK(run("four-term " + fx("t_m2.json") + " --ideal '1,2'").code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::string args : {"uce " + fx("sl2_bracket.json"), "tensor-self " + fx("t_m2.json"),
                                 "invariants " + fx("heisenberg.json"), "four-term " + fx("t_m2_sq.json") + " --ideal e0",
                                 "homology " + fx("n2.gf5.json") + " --max-degree 2"}) {
    CAPTURE(args);
    auto a = run(args + " --json"), b = run(args + " --json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.json()["schema_version"] == awb::io::report_schema_version);
  }
}

TEST_CASE("shipped fixtures match a fresh export") {
  auto dir = fs::temp_directory_path() / "awb_test_cli_export";
  fs::remove_all(dir);
  REQUIRE(run("export-fixtures " + dir.string()).code == 0);
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    CAPTURE(entry.path().filename().string());
    auto shipped = fixture_dir / entry.path().filename();
    REQUIRE(fs::exists(shipped));
    CHECK(read_text(shipped) == read_text(entry.path()));
    ++n;
  }
  std::size_t shipped_count = 0;
  for (const auto& entry : fs::directory_iterator(fixture_dir)) shipped_count += entry.path().extension() == ".json";
  CHECK(n == shipped_count);
}
