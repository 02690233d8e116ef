#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "sphere7/fock_rep.hpp"
#include "sphere7_cli/commands.hpp"

using namespace sphere7;
using namespace sphere7::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kStamp = "2000-01-01T00:00:00Z";

struct Run {
  int code;
  std::string out, err;
};

Run sphere7_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err, kStamp);
  return {code, out.str(), err.str()};
}

std::string path_file(const std::string& name) {
  const char* dir = std::getenv("SPHERE7_PATHS");
  REQUIRE(dir != nullptr);
  return (fs::path(dir) / name).string();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sphere7_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const json* find_section(const json& report, const std::string& name) {
  for (const auto& s : report["sections"])
    if (s["name"] == name) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("range parsing") {
  CHECK(parse_range("1..6").lo == 1);
  CHECK(parse_range("1..6").hi == 6);
  CHECK(parse_range("3").lo == 3);
  CHECK(parse_range("3").hi == 3);
  CHECK(to_string(IntRange{2, 5}) == "2..5");
  CHECK_THROWS_AS(parse_range("a..b"), UsageError);
  CHECK_THROWS_AS(parse_range(""), UsageError);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.m = {0, 2};
  CHECK_THROWS_AS(validate(cfg), UsageError);
  cfg = {};
  cfg.h = 0;
  CHECK_THROWS_AS(validate(cfg), UsageError);
  cfg = {};
  cfg.ell = {3, 1};
  CHECK_THROWS_AS(validate(cfg), UsageError);
  cfg = {};
  cfg.tau_rep = -1;
  CHECK_THROWS_AS(validate(cfg), UsageError);

  RunConfig j;
  apply_json(j, json::parse(R"({"seed": 7, "m": [2, 3], "ell": "1..2", "format": "csv"})"));
  CHECK(j.seed == 7);
  CHECK(j.m.lo == 2);
  CHECK(j.m.hi == 3);
  CHECK(j.ell.hi == 2);
  CHECK(j.format == Format::csv);
  CHECK_THROWS_AS(apply_json(j, json::parse(R"({"bogus": 1})")), UsageError);
}

TEST_CASE("exit codes") {
  CHECK(sphere7_run({"verify", "--m", "1..3", "--ell", "0..2"}).code == 0);
  CHECK(sphere7_run({"verify", "--m", "0"}).code == 2);
  CHECK(sphere7_run({}).code == 2);
  CHECK(sphere7_run({"frobnicate"}).code == 2);
  CHECK(sphere7_run({"verify", "--no-such-flag"}).code == 2);
  CHECK(sphere7_run({"verify", "--help"}).code == 0);
}

TEST_CASE("verify report") {
  const Run r = sphere7_run({"verify", "--m", "1..4", "--ell", "0..3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["command"] == "verify");
  CHECK(j["pass"] == true);
  const json* fock = find_section(j, "fock_rep");
  REQUIRE(fock != nullptr);
  for (const auto& c : (*fock)["checks"]) {
    const std::string name = c["name"];
    if (name.rfind("brackets", 0) == 0) CHECK(c["value"].get<double>() < 1e-10);
  }
}

TEST_CASE("mutations fail with the pair named") {
  for (const std::string m : {"k-bracket", "p-bracket", "j-bracket"}) {
    CAPTURE(m);
    const Run r = sphere7_run({"verify", "--m", "1..2", "--ell", "0..1", "--mutate", m});
    CHECK(r.code == 1);
    CHECK(std::regex_search(r.err, std::regex(R"(pair \[[A-Z][+-_]+,[A-Z][+-_]+\])")));
  }
  const Run k = sphere7_run({"verify", "--m", "1", "--ell", "0", "--mutate", "k-bracket"});
  CHECK(k.err.find("K++,K+-") != std::string::npos);
  const Run bad = sphere7_run({"verify", "--mutate", "nonsense"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("k-bracket") != std::string::npos);
}

TEST_CASE("config file") {
  const fs::path dir = scratch("config");
  std::ofstream(dir / "run.json") << R"({"m": "1..2", "ell": [0, 1], "seed": 3})";
  const Run r = sphere7_run({"table", "--config", (dir / "run.json").string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["config"]["m"] == "1..2");
  CHECK(j["config"]["seed"] == 3);
  // flags override the file
  const Run o = sphere7_run({"table", "--config", (dir / "run.json").string(), "--m", "3"});
  CHECK(json::parse(o.out)["config"]["m"] == "3");

  std::ofstream(dir / "bad.json") << R"({"m": "1..2", "colour": "red"})";
  CHECK(sphere7_run({"table", "--config", (dir / "bad.json").string()}).code == 2);
  CHECK(sphere7_run({"table", "--config", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("table") {
  const Run r = sphere7_run({"table", "--m", "1..8", "--ell", "0..3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const json* reps = find_section(j, "representations");
  REQUIRE(reps != nullptr);
  std::vector<int> dims;
  for (const auto& row : (*reps)["data"]["rows"]) dims.push_back(row["D"]);
  CHECK(dims == std::vector<int>{1, 4, 10, 20, 35, 56, 84, 120});
  CHECK((*reps)["data"]["rows"][0]["note"] == "trivial representation");
  CHECK((*reps)["data"]["rows"][1]["note"] == "");

  const json* emb = find_section(j, "embedding");
  REQUIRE(emb != nullptr);
  int prev = -100;
  for (const auto& row : (*emb)["data"]["rows"]) {
    const int g = row["quantum_grade"];
    CHECK(g >= prev);
    CHECK(row["classical_grade"] == g);
    prev = g;
  }
}

TEST_CASE("csv output writes per-section tables") {
  const fs::path dir = scratch("csv");
  const Run r = sphere7_run({"table", "--m", "1..3", "--ell", "0..1", "--format", "csv", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "table.csv"));
  const std::string reps = slurp(dir / "representations.csv");
  CHECK(reps.rfind("m,D,", 0) == 0);
  CHECK(reps.find("trivial representation") != std::string::npos);
  CHECK(slurp(dir / "table.csv").find("# command=table timestamp=" + kStamp) == 0);
}

TEST_CASE("transport examples") {
  {
    const Run r = sphere7_run({"transport", path_file("constant.json")});
    REQUIRE(r.code == 0);
    const json d = json::parse(r.out)["sections"][0]["data"];
    CHECK(d["holonomy_distance"] == 0.0);
  }
  {
    const Run r = sphere7_run({"transport", path_file("great_circle.json")});
    REQUIRE(r.code == 0);
    const json d = json::parse(r.out)["sections"][0]["data"];
    CHECK(d["closed"] == true);
    CHECK(d["holonomy_distance"].get<double>() < 1e-6);
    CHECK(std::abs(d["probability_sum"].get<double>() - 1.0) < 1e-8);
  }
  {
    const Run r = sphere7_run({"transport", path_file("reeb.json")});
    REQUIRE(r.code == 0);
    const json d = json::parse(r.out)["sections"][0]["data"];
    CHECK(d["holonomy_distance"].get<double>() < 1e-5);
    CHECK(d["probability"].get<double>() < 1e-10);
  }
  {
    const Run r = sphere7_run({"transport", path_file("piecewise.json"), "--m", "1..3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["sections"].size() == 3);
    CHECK(j["sections"][0]["data"]["closed"] == false);
  }
}

TEST_CASE("malformed path files") {
  const fs::path dir = scratch("paths");
  const std::vector<std::string> bad = {
      "not json",
      R"({"kind": "spiral"})",
      R"({"kind": "constant"})",
      R"({"kind": "great_circle", "from": [1, 0, 0, 0, 0, 0, 0, 0]})",
      R"({"kind": "constant", "point": [1, 2, 3]})",
      R"({"kind": "constant", "point": [1, 0, 0, 0, 0, 0, 0, 0], "states": {"initial": 99}})",
  };
  for (std::size_t k = 0; k < bad.size(); ++k) {
    CAPTURE(bad[k]);
    const fs::path f = dir / ("bad" + std::to_string(k) + ".json");
    std::ofstream(f) << bad[k];
    CHECK(sphere7_run({"transport", f.string(), "--m", "2"}).code == 2);
  }
  CHECK(sphere7_run({"transport", (dir / "absent.json").string()}).code == 2);
  CHECK_THROWS_AS(parse_path_file(json::parse(R"({"kind": "reeb"})"), 100), UsageError);
}

TEST_CASE("path file parsing") {
  const PathFile pf = parse_path_file(
      json::parse(R"({"kind": "great_circle", "from": {"x": [1, 0, 0, 0], "y": [0, 0, 0, 0]},
                      "to": {"x": [0, 0, 0, 0], "y": [0, 1, 0, 0]}, "m": 3, "allow_switch": false})"),
      500);
  CHECK(pf.kind == "great_circle");
  CHECK(pf.closed);
  CHECK(pf.m == 3);
  CHECK(!pf.allow_switch);
  CHECK(pf.path.steps == 500);
}

TEST_CASE("dump-rep round trip") {
  const fs::path dir = scratch("dump");
  const Run r = sphere7_run({"dump-rep", "--m", "2..3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "structure_constants.json"));
  for (int m = 2; m <= 3; ++m) {
    const fock::RepSet rep = fock::build_rho(m);
    const auto names = fock::generator_names();
    for (int a = 0; a < lie::kDim; ++a) {
      const fs::path header = dir / ("rho_m" + std::to_string(m) + "_" + sanitize_name(names[a]) + ".json");
      REQUIRE(fs::exists(header));
      const json h = json::parse(slurp(header));
      CHECK(h["generator"] == names[a]);
      CHECK(h["dim"] == fock::dim(m));
      CHECK(h["basis"].size() == static_cast<std::size_t>(fock::dim(m)));
      CHECK(fs::file_size(dir / h["data_file"].get<std::string>()) ==
            static_cast<std::uintmax_t>(16 * fock::dim(m) * fock::dim(m)));
      CHECK(fock::max_abs(read_matrix(header.string()) - rep.rho[a]) == 0.0);
    }
  }
  const json sc = json::parse(slurp(dir / "structure_constants.json"));
  CHECK(sc.contains("spinor"));
  CHECK(sc.contains("vector"));
}

TEST_CASE("dump-rep with a generator filter and inline data") {
  const fs::path dir = scratch("dump_inline");
  REQUIRE(sphere7_run({"dump-rep", "--m", "2", "--generator", "Pp_m", "--inline", "--out", dir.string()}).code == 0);
  const fs::path header = dir / "rho_m2_Pp_m.json";
  REQUIRE(fs::exists(header));
  CHECK(!fs::exists(dir / "rho_m2_Pp_m.bin"));
  CHECK(!fs::exists(dir / "rho_m2_Kpm.json"));
  const fock::Matrix a = read_matrix(header.string());
  CHECK(std::abs(a(1, 0) - fock::cplx(1, 0)) < 1e-15);
  CHECK(sphere7_run({"dump-rep", "--m", "2", "--generator", "Q++", "--out", dir.string()}).code == 2);
}

TEST_CASE("sanitized names") {
  CHECK(sanitize_name("P+_-") == "Pp_m");
  CHECK(sanitize_name("K+-") == "Kpm");
  CHECK(sanitize_name("J--") == "Jmm");
  CHECK(sanitize_name("a b/c") == "a_b_c");
}

TEST_CASE("structure constants export") {
  const ojson s = structure_constants_json(lie::Basis::spinor);
  bool found = false;
  for (const auto& e : s)
    if (e["X"] == "J+-" && e["Y"] == "J++") {
      found = true;
      REQUIRE(e["result"].size() == 1);
      CHECK(e["result"][0]["gen"] == "J++");
      CHECK(e["result"][0]["re"] == "0");
      CHECK(e["result"][0]["im"] == "-2");
    }
  // pairs are listed with a < b, so [J+-, J++] may appear as [J++, J+-]
  if (!found)
    for (const auto& e : s)
      if (e["X"] == "J++" && e["Y"] == "J+-") {
        found = true;
        CHECK(e["result"][0]["im"] == "2");
      }
  CHECK(found);
}

TEST_CASE("eds-check") {
  const Run r = sphere7_run({"eds-check", "--samples", "30"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["sections"][0]["data"]["samples"] == 30);
  CHECK(sphere7_run({"eds-check", "--samples", "0"}).code == 2);
  CHECK(sphere7_run({"eds-check", "--h", "-1"}).code == 2);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::vector<std::string>> cmds = {
      {"verify", "--m", "1..3", "--ell", "0..2"},
      {"table", "--m", "1..4", "--ell", "0..2"},
      {"eds-check", "--samples", "20", "--seed", "9"},
      {"transport", path_file("piecewise.json"), "--m", "2"},
  };
  for (const auto& c : cmds) {
    CAPTURE(c[0]);
    const Run a = sphere7_run(c), b = sphere7_run(c);
    CHECK(a.out == b.out);
  }
  const Run s1 = sphere7_run({"eds-check", "--samples", "20", "--seed", "1"});
  const Run s2 = sphere7_run({"eds-check", "--samples", "20", "--seed", "2"});
  CHECK(s1.out != s2.out);
}

TEST_CASE("thread count does not change reports") {
  const std::vector<std::string> cmd = {"eds-check", "--samples", "24"};
  setenv("SPHERE7_THREADS", "1", 1);
  CHECK(thread_budget() == 1);
  const Run one = sphere7_run(cmd);
  const Run v1 = sphere7_run({"verify", "--m", "1..4", "--ell", "0..2"});
  setenv("SPHERE7_THREADS", "4", 1);
  const Run four = sphere7_run(cmd);
  const Run v4 = sphere7_run({"verify", "--m", "1..4", "--ell", "0..2"});
  unsetenv("SPHERE7_THREADS");
  CHECK(one.out == four.out);
  CHECK(v1.out == v4.out);
}
