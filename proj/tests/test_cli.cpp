#include <doctest.h>

#include <cff/io/commands.hpp>
#include <cff/io/config.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using cff::io::Json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
  Json report;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cff::io::run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (!r.out.empty() && r.out[0] == '{') r.report = Json::parse(r.out);
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

Json strip_wall_time(Json report) {
  report.erase("wall_time_ms");
  return report;
}

// Single whole-space member with C = 2I: bounds (2, 2), so erasing the only
// member lands in the below-A case with nothing left.
const char* kWholeSpace = R"({
  "dimension": 2,
  "field": "real",
  "C": [[2.0, 0.0], [0.0, 2.0]],
  "Cprime": "identity",
  "subspaces": [{"basis": [[1.0, 0.0], [0.0, 1.0]], "weight": 1.0}]
})";

// Parseval geometry with weights 2: S_W = 8I, gamma = 49.
const char* kOverscaled = R"({
  "dimension": 3,
  "field": "real",
  "C": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
  "Cprime": "identity",
  "subspaces": [
    {"basis": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], "weight": 2.0},
    {"basis": [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], "weight": 2.0},
    {"basis": [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]], "weight": 2.0}
  ]
})";

}  // namespace

TEST_CASE("analyze reports the as-written bounds and identity") {
  RunResult r = run({"analyze", "fixtures/r3_as_written.json"});
  REQUIRE(r.code == 0);
  REQUIRE(r.report.is_object());
  CHECK(r.report["schema"] == "cff-report/1");
  CHECK(r.report["command"] == "analyze");
  CHECK(r.report["inputs"][0]["dimension"] == 3);
  CHECK(r.report["inputs"][0]["members"] == 3);
  const Json& bounds = r.report["result"]["bounds"];
  CHECK(std::abs(bounds["lower"].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(bounds["upper"].get<double>() - 1.0) <= 1e-12);
  CHECK(bounds["classification"] == "frame");
  CHECK(r.report["verdicts"]["trace_identity_holds"] == true);
  CHECK(r.report["verdicts"]["positivity_ok"] == true);
  CHECK(r.report["verdicts"]["rayleigh_ok"] == true);
}

TEST_CASE("erase on the Parseval fixture lands below A") {
  RunResult r = run({"erase", "fixtures/r3_parseval.json", "--indices", "1"});
  REQUIRE(r.code == 0);
  const Json& result = r.report["result"];
  CHECK(result["case"] == "below-A");
  CHECK(result["erased"] == Json::array({1}));
  CHECK(std::abs(result["predicted_lower"].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(result["actual_bounds"]["lower"].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(result["actual_bounds"]["upper"].get<double>() - 1.0) <= 1e-12);
  CHECK(r.report["verdicts"]["theorem_holds"] == true);
}

TEST_CASE("analyze flags the nonpositive fixture and exits 2") {
  RunResult r = run({"analyze", "fixtures/nonpositive_pair.json"});
  CHECK(r.code == 2);
  const Json& positivity = r.report["result"]["positivity"];
  CHECK(positivity["all_positive"] == false);
  CHECK(positivity["offending"] == Json::array({1}));
  CHECK(r.report["result"]["bounds"]["classification"] == "indefinite");
  CHECK(r.report["result"]["characterization"].is_null());
}

TEST_CASE("error and compose and approx succeed on the fixtures") {
  RunResult e = run({"error", "fixtures/r3_fourmember.json"});
  REQUIRE(e.code == 0);
  CHECK(std::abs(e.report["result"]["e1_exact"].get<double>() - 0.6) <= 1e-12);
  CHECK(e.report["verdicts"]["optimal"] == false);

  RunResult c = run({"compose", "fixtures/r3_parseval.json",
                     "fixtures/r3_parseval.json"});
  REQUIRE(c.code == 0);
  CHECK(std::abs(c.report["result"]["trace_class"]["trace_norm_phi"].get<double>() -
                 3.0) <= 1e-12);
  CHECK(c.report["verdicts"]["trace_class_holds"] == true);

  RunResult a = run({"approx", "fixtures/r3_parseval.json",
                     "fixtures/r3_parseval.json"});
  REQUIRE(a.code == 0);
  CHECK(std::abs(a.report["result"]["gamma"].get<double>()) <= 1e-12);
  CHECK(a.report["verdicts"]["holds"] == true);
}

TEST_CASE("usage and validation problems exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"analyze"}).code == 1);
  CHECK(run({"analyze", "fixtures/does_not_exist.json"}).code == 1);
  CHECK(run({"erase", "fixtures/r3_parseval.json"}).code == 1);
  CHECK(run({"erase", "fixtures/r3_parseval.json", "--indices", "0"}).code == 1);
  CHECK(run({"erase", "fixtures/r3_parseval.json", "--indices", "1,x"}).code == 1);
  CHECK(run({"erase", "fixtures/r3_parseval.json", "--indices", "9"}).code == 1);
  CHECK(run({"analyze", "fixtures/r3_parseval.json", "--tol", "junk"}).code == 1);
  CHECK(run({"generate", "--dim", "3", "--dims", "2,2"}).code == 1);  // no --out

  const std::string bad = temp_path("cff_cli_bad_weight.json");
  Json doc = Json::parse(kWholeSpace);
  doc["subspaces"][0]["weight"] = 0.0;
  cff::io::write_text(bad, doc.dump());
  RunResult r = run({"analyze", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("weight must be positive") != std::string::npos);
}

TEST_CASE("inapplicable inputs exit 2") {
  const std::string whole = temp_path("cff_cli_whole.json");
  cff::io::write_text(whole, kWholeSpace);
  RunResult empty = run({"erase", whole, "--indices", "1"});
  CHECK(empty.code == 2);

  const std::string overscaled = temp_path("cff_cli_overscaled.json");
  cff::io::write_text(overscaled, kOverscaled);
  RunResult gamma = run({"approx", overscaled, overscaled});
  CHECK(gamma.code == 2);
  CHECK(gamma.report["verdicts"]["applicable"] == false);
  CHECK(std::abs(gamma.report["result"]["gamma"].get<double>() - 49.0) <= 1e-9);

  RunResult positivity = run({"compose", "fixtures/nonpositive_pair.json",
                              "fixtures/nonpositive_pair.json"});
  CHECK(positivity.code == 2);

  RunResult mismatch = run({"compose", "fixtures/r3_parseval.json", whole});
  CHECK(mismatch.code == 1);  // ambient dimensions differ: an input problem
}

TEST_CASE("reports are deterministic apart from wall time") {
  const std::vector<std::string> argv = {"analyze", "fixtures/r3_parseval.json",
                                         "--seed", "5", "--samples", "200"};
  RunResult first = run(argv);
  RunResult second = run(argv);
  REQUIRE(first.code == 0);
  REQUIRE(second.code == 0);
  CHECK(strip_wall_time(first.report).dump() ==
        strip_wall_time(second.report).dump());

  RunResult pretty = run({"analyze", "fixtures/r3_parseval.json", "--seed", "5",
                          "--samples", "200", "--pretty"});
  CHECK(strip_wall_time(pretty.report).dump() ==
        strip_wall_time(first.report).dump());
}

TEST_CASE("generate writes a loadable deterministic config") {
  const std::string out_a = temp_path("cff_cli_gen_a.json");
  const std::string out_b = temp_path("cff_cli_gen_b.json");
  const std::vector<std::string> base = {"generate", "--dim", "4",     "--dims",
                                         "2,1,3",    "--mode", "c2",   "--field",
                                         "complex",  "--seed", "1234"};

  std::vector<std::string> argv_a = base;
  argv_a.insert(argv_a.end(), {"--weight-law", "random", "--out", out_a});
  std::vector<std::string> argv_b = base;
  argv_b.insert(argv_b.end(), {"--weight-law", "random", "--out", out_b});

  RunResult a = run(argv_a);
  REQUIRE(a.code == 0);
  CHECK(a.report["verdicts"]["all_positive"] == true);
  RunResult b = run(argv_b);
  REQUIRE(b.code == 0);
  CHECK(cff::io::read_text(out_a) == cff::io::read_text(out_b));

  RunResult analyze = run({"analyze", out_a});
  CHECK(analyze.code == 0);
  CHECK(analyze.report["inputs"][0]["dimension"] == 4);
  CHECK(analyze.report["inputs"][0]["members"] == 3);
  CHECK(analyze.report["inputs"][0]["field"] == "complex");
}

TEST_CASE("the report copy written by --out matches stdout") {
  const std::string copy = temp_path("cff_cli_report_copy.json");
  RunResult r = run({"error", "fixtures/r3_parseval.json", "--out", copy});
  REQUIRE(r.code == 0);
  CHECK(cff::io::read_text(copy) == r.out);
}

TEST_CASE("CFF_DEFAULT_TOL fills in when --tol is absent") {
  char* old = std::getenv("CFF_DEFAULT_TOL");
  const std::string saved = old ? old : "";

  setenv("CFF_DEFAULT_TOL", "0.001", 1);
  RunResult env_run = run({"analyze", "fixtures/r3_parseval.json"});
  CHECK(env_run.report["tolerance"].get<double>() == doctest::Approx(0.001));

  RunResult flag_run =
      run({"analyze", "fixtures/r3_parseval.json", "--tol", "1e-7"});
  CHECK(flag_run.report["tolerance"].get<double>() == doctest::Approx(1e-7));

  setenv("CFF_DEFAULT_TOL", "banana", 1);
  RunResult junk_run = run({"analyze", "fixtures/r3_parseval.json"});
  CHECK(junk_run.report["tolerance"].get<double>() == doctest::Approx(1e-9));

  if (old)
    setenv("CFF_DEFAULT_TOL", saved.c_str(), 1);
  else
    unsetenv("CFF_DEFAULT_TOL");
}

TEST_CASE("help exits 0") {
  RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("analyze") != std::string::npos);
}
