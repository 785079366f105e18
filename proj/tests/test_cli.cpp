#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "nlum/consistency.hpp"
#include "nlum/model_io.hpp"

using namespace nlum;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(NLUM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_doc(const std::string& name, const std::string& body) {
  std::string path = "cli_fixture_" + name + ".json";
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kConcentratedModel = R"({
  "atoms": ["w1", "w2", "w3"],
  "p0": ["1/50", "1/50", "24/25"],
  "a": "-3/20", "b": "5/4", "orientation": "lower"
})";

const char* kBrokenSkewedModel = R"({
  "atoms": ["w1", "w2", "w3"],
  "p0": ["1/3", "1/3", "1/3"],
  "a": "-4", "b": "17/2", "orientation": "lower"
})";

const char* kEqualGapModel = R"({
  "atoms": ["w1", "w2", "w3"],
  "p0": ["0.3", "0.7", "0"],
  "a": "-0.125", "b": "1.25", "orientation": "lower"
})";

}  // namespace

TEST_CASE("classify reports tag, conjugate intercept and boundary information") {
  std::string path = write_doc("classify", kConcentratedModel);
  RunResult r = run("classify " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("HBM, c=-1/10, b+2a=19/20") != std::string::npos);

  std::string pmm = write_doc("classify_pmm", R"({
    "atoms": ["w1", "w2"], "p0": ["1/2", "1/2"],
    "a": "-1/10", "b": "11/10", "orientation": "lower"})");
  CHECK(run("classify " + pmm).output.substr(0, 3) == "PMM");

  std::string notnl = write_doc("classify_notnl", R"({
    "atoms": ["w1", "w2"], "p0": ["1/2", "1/2"],
    "a": "1/10", "b": "1", "orientation": "lower"})");
  RunResult n = run("classify " + notnl);
  CHECK(n.exit_code == 0);
  CHECK(n.output.substr(0, 5) == "NotNL");
}

TEST_CASE("check emits a JSON verdict and the exit-code contract") {
  std::string broken = write_doc("check_broken", kBrokenSkewedModel);
  RunResult fail = run("check " + broken + " --notion coherence");
  CHECK(fail.exit_code == 1);
  json doc = json::parse(fail.output);
  CHECK(doc.at("holds") == false);
  REQUIRE(doc.contains("witness"));
  REQUIRE(doc.at("witness").contains("events"));
  CHECK(doc.at("witness").at("events").size() == 2);  // an atom pair

  std::string precise = write_doc("check_precise", kEqualGapModel);
  RunResult ok = run("check " + precise + " --notion precise");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.output).at("holds") == true);

  std::string vacuous = write_doc("check_vacuous", R"({
    "atoms": ["w1", "w2", "w3"], "p0": ["1/2", "1/4", "1/4"],
    "a": "-3/5", "b": "3/5", "orientation": "lower"})");
  CHECK(run("check " + vacuous + " --notion coherence").exit_code == 0);

  CHECK(run("check " + precise + " --notion nonsense").exit_code == 2);
}

TEST_CASE("parse failures name the offending field and exit with 2") {
  std::string bad = write_doc("bad_p0", R"({
    "atoms": ["w1", "w2"], "p0": ["1/2", "x"],
    "a": "0", "b": "1", "orientation": "lower"})");
  RunResult r = run("check " + bad + " --notion capacity");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("p0[1]") != std::string::npos);

  std::string missing = write_doc("missing_orientation", R"({
    "atoms": ["w1", "w2"], "p0": ["1/2", "1/2"], "a": "0", "b": "1"})");
  RunResult m = run("classify " + missing);
  CHECK(m.exit_code == 2);
  CHECK(m.output.find("orientation") != std::string::npos);
}

TEST_CASE("table reproduces the concentrated model rows exactly") {
  std::string path = write_doc("table", kConcentratedModel);
  RunResult r = run("table " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "measure,w1,w2,w3,w1|w2,w1|w3,w2|w3,0,Omega\n"
        "P0,1/50,1/50,24/25,1/25,49/50,49/50,0,1\n"
        "lower,0,0,1,0,1,1,0,1\n"
        "upper,0,0,1,0,1,1,0,1\n");

  RunResult plot = run("table " + path + " --plot-data");
  CHECK(plot.exit_code == 0);
  CHECK(plot.output.substr(0, 15) == "p0,lower,upper\n");
}

TEST_CASE("table rows re-parsed as an assessment give identical verdicts") {
  std::string path = write_doc("roundtrip", kEqualGapModel);
  RunResult r = run("table " + path + " --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);

  NLModel model = parse_model_document(kEqualGapModel);
  const Partition& p = model.partition();
  std::vector<Rational> values(p.event_count(), Rational(0));
  for (std::size_t i = 0; i < doc.at("events").size(); ++i) {
    std::string name = doc.at("events")[i];
    Event e = p.empty_event();
    if (name == "Omega") {
      e = p.full_event();
    } else if (name != "0") {
      std::stringstream ss(name);
      std::string label;
      while (std::getline(ss, label, '|')) e = e.unite(p.atom(p.index_of(label)));
    }
    values[e.mask] = Rational::parse(doc.at("lower")[i].get<std::string>());
  }
  Assessment reparsed(p, values, Orientation::Lower);
  Assessment direct = model.to_assessment();
  CHECK(reparsed.values() == direct.values());
  CHECK(is_precise_probability(reparsed).holds == is_precise_probability(direct).holds);
  CHECK(is_coherent(reparsed).holds == is_coherent(direct).holds);
}

TEST_CASE("interval extension and the unreachable exit path") {
  std::string vac = write_doc("interval_vac", R"({
    "atoms": ["w1", "w2", "w3"], "l": ["0", "0", "0"], "u": ["1", "1", "1"]})");
  RunResult r = run("extend-interval " + vac + " --event w1,w2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("w1|w2,0,1") != std::string::npos);

  std::string bad = write_doc("interval_bad", R"({
    "atoms": ["w1", "w2", "w3"], "l": ["3/5", "3/5", "0"], "u": ["3/5", "3/5", "0"]})");
  RunResult u = run("extend-interval " + bad);
  CHECK(u.exit_code == 1);
  CHECK(u.output.find("u_1 + sum of the other l_j") != std::string::npos);
}

TEST_CASE("fuzz runs are deterministic and replayable") {
  RunResult a = run("fuzz --cases 6 --atoms 3 --seed 7 --family vbm --json");
  RunResult b = run("fuzz --cases 6 --atoms 3 --seed 7 --family vbm --json");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  json doc = json::parse(a.output);
  CHECK(doc.at("cases_run") == 6);
  CHECK(doc.at("failures").empty());

  RunResult replay = run("fuzz --atoms 3 --family vbm --replay 12345");
  CHECK(replay.exit_code == 0);
  json rep = json::parse(replay.output);
  CHECK(rep.at("case_seed") == 12345);
  CHECK(!rep.at("checks").empty());
}
