#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "btp/cli.hpp"
#include "doctest.h"

using namespace btp;
using namespace btp::cli;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("btpcli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
  auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_inprocess(std::vector<std::string> args) {
  args.insert(args.begin(), "btpcli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary; skipped when the build does not export its path.
std::optional<Outcome> run_binary(const std::string& args) {
  const char* exe = std::getenv("BTPCLI");
  if (!exe) return std::nullopt;
  auto dir = scratch_dir();
  std::string out = (dir / "stdout.txt").string(), err = (dir / "stderr.txt").string();
  int status = std::system((std::string(exe) + " " + args + " > " + out + " 2> " + err).c_str());
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  return Outcome{WEXITSTATUS(status), slurp(out), slurp(err)};
}

const char* kG2Killing = R"({"name": "killing metric, g2/u2", "type": "flag", "cartan": "G2", "isotropy": [0],
                           "metric": "killing", "checks": ["btp", "bas", "balanced"], "expect": {"kahler": false}})";

}  // namespace

TEST_CASE("space descriptions round-trip through JSON") {
  std::vector<std::string> configs = {
      R"({"name": "a", "type": "flag", "cartan": "A2", "metric": ["1", "2", "5/2"], "checks": ["balanced"]})",
      R"({"name": "b", "type": "flag", "cartan": "B3", "isotropy": [0, 2]})",
      R"({"name": "c", "type": "canonical", "cartan": "A1", "expect": {"btp": true}})",
      R"({"name": "d", "type": "samelson", "factors": ["A1", "A1"], "root_values": [1, "3"], "torus_metric": "killing"})",
      R"({"name": "e", "type": "nilpotent", "n": 3, "r": 2, "y": [["1/2-3i", "i"]]})",
      R"({"name": "f", "type": "m4", "a1": -5, "a2": 2})",
      R"({"name": "g", "type": "calabi-eckmann", "m1": 2, "q_scale": "8", "f": [["0", "1/2"], ["0", "0"]]})",
      R"({"name": "h", "type": "hopf", "n": 3, "points": 4, "step": 0.001, "perturbation": 0.25})"};
  for (const std::string& text : configs) {
    CAPTURE(text);
    SpaceSpec spec = parse_space(json::parse(text));
    json once = to_json(spec);
    json twice = to_json(parse_space(once));
    CHECK(once == twice);
  }
  SpaceSpec e = parse_space(json::parse(configs[4]));
  const auto& nil = std::get<NilpotentSpace>(e.data);
  CHECK(nil.y[0][0] == GQ(Q(1, 2), Q(-3)));
  CHECK(nil.y[0][1] == GQ::I());
  CHECK(parse_config(json::parse("[" + configs[0] + "," + configs[1] + "]")).size() == 2);
  CHECK(parse_config(json::parse(R"({"spaces": [)" + configs[2] + "]}")).size() == 1);
}

TEST_CASE("malformed configs are rejected") {
  std::vector<std::string> bad = {
      R"({"type": "flag", "cartan": "A2", "metric": ["1/0", "1", "1"]})",
      R"({"type": "flag", "cartan": "A2", "metric": [1.5, 1, 1]})",
      R"({"type": "flag", "cartan": "Z9"})",
      R"({"type": "flag", "cartan": "A2", "metrik": "killing"})",
      R"({"type": "torus", "n": 2})",
      R"({"type": "nilpotent", "n": 2, "r": 1, "y": [["1", "2"]]})",
      R"({"type": "nilpotent", "n": 2, "r": 2, "y": []})",
      R"({"type": "canonical", "cartan": "A1", "checks": ["shiny"]})",
      R"({"type": "canonical", "cartan": "A1", "expect": {"btp": "yes"}})",
      R"({"type": "hopf", "n": 2, "step": 0})",
      R"({"spaces": []})",
      R"(42)"};
  for (const std::string& text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(json::parse(text)), ConfigError);
  }
  // Parameters only the constructors can judge surface as config errors too.
  Options opt;
  CHECK_THROWS_AS(cmd_check(parse_config(json::parse(R"({"type": "flag", "cartan": "A2", "metric": ["1", "1"]})")), opt),
                  ConfigError);
  CHECK_THROWS_AS(cmd_check(parse_config(json::parse(R"({"type": "m4", "a1": -1, "a2": 1})")), opt), ConfigError);
  CHECK_THROWS_AS(load_config((scratch_dir() / "missing.json").string()), ConfigError);
}

TEST_CASE("Killing metric on G2/U(2) is BTP, BAS and balanced but not Kaehler") {
  RunReport rep = cmd_check(parse_config(json::parse(kG2Killing)), Options{});
  REQUIRE(rep.spaces.size() == 1);
  const SpaceResult& s = rep.spaces[0];
  CHECK(s.verdict("btp") == true);
  CHECK(s.verdict("bas") == true);
  CHECK(s.verdict("balanced") == true);
  CHECK(s.verdict("kahler") == false);
  CHECK(s.verdict("closed_forms") == true);
  CHECK(s.witnesses.count("kahler") == 1);
  CHECK(rep.exit_code() == 0);
}

TEST_CASE("failed checks give exit code 1 with a witness") {
  json cfg = json::parse(R"({"name": "generic", "type": "flag", "cartan": "A2", "metric": ["1", "2", "2"],
                             "checks": ["btp"]})");
  RunReport rep = cmd_check(parse_config(cfg), Options{});
  CHECK(rep.exit_code() == 1);
  REQUIRE(rep.spaces[0].failures.size() == 1);
  CHECK(rep.spaces[0].failures[0].find("nabla^b T^b nonzero") != std::string::npos);

  json hopf = json::parse(R"({"type": "hopf", "n": 2, "points": 3, "expect": {"lck": true}})");
  RunReport unavailable = cmd_check(parse_config(hopf), Options{});
  CHECK(unavailable.exit_code() == 1);
  CHECK(unavailable.spaces[0].failures[0].find("not available") != std::string::npos);
}

TEST_CASE("text and JSON reports carry identical verdicts; reports are deterministic") {
  Options opt;
  RunReport a = cmd_catalog(opt);
  RunReport b = cmd_catalog(opt);
  CHECK(to_json(a, false).dump() == to_json(b, false).dump());
  CHECK(to_text(a, false) == to_text(b, false));
  auto from_json = verdicts_of(json::parse(to_json(a).dump()));
  auto from_text = verdicts_of_text(to_text(a));
  CHECK(from_json.size() == a.spaces.size());
  CHECK(from_json == from_text);
  // Every catalog entry has a distinct name.
  CHECK(from_json.size() == builtin_catalog().size());
}

TEST_CASE("every catalog entry matches the golden verdicts") {
  const char* data = std::getenv("BTP_DATA");
  std::string golden = std::string(data ? data : "data") + "/catalog_golden.json";
  REQUIRE(std::filesystem::exists(golden));
  RunReport rep = cmd_catalog(Options{}, golden);
  for (const SpaceResult& s : rep.spaces) {
    CAPTURE(s.name);
    CHECK(s.failures.empty());
  }
  CHECK(rep.exit_code() == 0);

  // A golden file that disagrees is reported as a check failure.
  auto path = scratch_dir() / "golden_wrong.json";
  std::ofstream(path) << R"({"entries": {"su3-t-generic": {"btp": true}}})";
  RunReport wrong = cmd_catalog(Options{}, path.string());
  CHECK(wrong.exit_code() == 1);
  for (const SpaceResult& s : wrong.spaces) {
    REQUIRE(s.failures.size() == 1);
    if (s.name == "su3-t-generic")
      CHECK(s.failures[0].find("btp: expected true, got false") == 0);
    else
      CHECK(s.failures[0] == "no golden record for this entry");
  }
  std::ofstream(path) << R"({"entries": {"no-such-entry": {"btp": true}}})";
  CHECK_THROWS_AS(cmd_catalog(Options{}, path.string()), ConfigError);
}

TEST_CASE("solver listings") {
  Options opt;
  opt.solver_samples = 500;
  RunReport su3 = cmd_solve(parse_config(json::parse(R"({"type": "flag", "cartan": "A2"})")), opt);
  CHECK(su3.exit_code() == 0);
  const json& fams = su3.spaces[0].solver["families"];
  REQUIRE(fams.size() == 2);
  CHECK(fams[0]["tag"] == "kahler_family");
  CHECK(fams[1]["tag"] == "killing_ray");

  // Over the cap: flagged with a warning, still exit 0.
  opt.solver_cap = 5;
  RunReport a4 = cmd_solve(parse_config(json::parse(R"({"type": "flag", "cartan": "A4"})")), opt);
  CHECK(a4.exit_code() == 0);
  CHECK(a4.spaces[0].verdict("partial") == true);
  CHECK_FALSE(a4.spaces[0].warnings.empty());

  RunReport sam = cmd_solve(parse_config(json::parse(R"({"type": "samelson", "factors": ["A2"]})")), opt);
  CHECK(sam.exit_code() == 0);
  CHECK(sam.spaces[0].solver["basis"].size() == 1);

  RunReport ce = cmd_solve(parse_config(json::parse(R"({"type": "calabi-eckmann", "q_scale": "8"})")), opt);
  CHECK(ce.spaces[0].verdict("found") == true);
  CHECK(ce.spaces[0].verdict("matches_linear_solution") == true);

  CHECK_THROWS_AS(cmd_solve(parse_config(json::parse(R"({"type": "m4", "a1": -3, "a2": 1})")), opt), ConfigError);
}

TEST_CASE("theorem bundles") {
  Options opt;
  opt.solver_samples = 1000;
  RunReport su3 = cmd_theorem("flag-su3", opt);
  CHECK(su3.exit_code() == 0);
  CHECK(su3.spaces[0].verdict("families_are_kahler_and_killing") == true);
  for (const char* id : {"m4", "b-isometry", "samelson"}) {
    CAPTURE(id);
    CHECK(cmd_theorem(id, opt).exit_code() == 0);
  }
  CHECK(theorem_bundles().size() >= 14);
  CHECK_THROWS_AS(cmd_theorem("no-such-theorem", opt), ConfigError);
}

TEST_CASE("command-line entry point") {
  std::string good = write_config("good.json", kG2Killing);
  Outcome ok = run_inprocess({"check", good});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("verdict btp: true") != std::string::npos);

  Outcome js = run_inprocess({"--format", "json", "--no-timing", "check", good});
  CHECK(js.code == 0);
  json parsed = json::parse(js.out);
  CHECK(parsed["exit_code"] == 0);
  CHECK(verdicts_of(parsed) == verdicts_of_text(ok.out));

  std::string zero_den = write_config("zero_den.json", R"({"type": "flag", "cartan": "A2", "metric": ["1/0", "1", "1"]})");
  Outcome bad = run_inprocess({"check", zero_den});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("1/0") != std::string::npos);

  std::string failing = write_config("failing.json", R"({"type": "flag", "cartan": "A2", "metric": ["1", "2", "2"],
                                                        "checks": ["btp"]})");
  CHECK(run_inprocess({"check", failing}).code == 1);
  CHECK(run_inprocess({"--format", "yaml", "check", good}).code == 2);
  CHECK(run_inprocess({"--tolerance", "-1", "check", good}).code == 2);
  CHECK(run_inprocess({"frobnicate"}).code == 2);
  CHECK(run_inprocess({"theorem", "unknown"}).code == 2);
  Outcome list = run_inprocess({"theorem", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("flag-su3") != std::string::npos);

  if (auto bin = run_binary("theorem flag-su3 --samples 1000")) {
    CHECK(bin->code == 0);
    CHECK(bin->out.find("families_are_kahler_and_killing: true") != std::string::npos);
  }
  if (auto bin = run_binary("check " + zero_den)) CHECK(bin->code == 2);
  if (auto bin = run_binary("--format json check " + failing)) {
    CHECK(bin->code == 1);
    CHECK(json::parse(bin->out)["passed"] == false);
  }
  std::filesystem::remove_all(scratch_dir());
}
