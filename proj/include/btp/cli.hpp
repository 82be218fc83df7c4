#pragma once
// Config-driven driver: space descriptions in JSON, checks, solvers, the
// built-in catalog and scripted verification bundles.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "btp/scalar.hpp"
#include "json.hpp"

namespace btp::cli {

/// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlagSpace {
  std::string cartan;
  /// Zero-based simple roots spanning the semisimple part of the isotropy.
  std::vector<int> isotropy;
  /// One value per isotropy class; nullopt selects the Killing metric.
  std::optional<std::vector<Q>> metric;
};

struct CanonicalSpace {
  std::string cartan;
};

struct SamelsonSpace {
  std::vector<std::string> factors;
  /// One value per positive root; nullopt means all equal to 1.
  std::optional<std::vector<Q>> root_values;
  /// Torus metric -B (with unit root values this is the bi-invariant metric)
  /// instead of the identity on the coroot basis.
  bool killing_torus = false;
};

struct NilpotentSpace {
  int n = 0;
  int r = 0;
  /// (n - r) x r entries.
  std::vector<std::vector<GQ>> y;
};

struct M4Space {
  long a1 = -3;
  long a2 = 1;
};

struct CalabiEckmannSpace {
  int m1 = 1;
  int m2 = 1;
  Q alpha = 0;
  Q beta = 1;
  Q c1 = 1;
  Q c2 = 1;
  Q q_scale = 1;
  /// 2x2 presentation map; nullopt selects the naturally reductive one.
  std::optional<std::vector<std::vector<Q>>> f;
};

struct HopfSpace {
  int n = 2;
  int points = 20;
  std::uint64_t seed = 1;
  double step = 1e-5;
  /// Conformal perturbation (1 + eps |z_1|^2); zero gives the Hopf metric itself.
  double perturbation = 0;
};

using SpaceData =
    std::variant<FlagSpace, CanonicalSpace, SamelsonSpace, NilpotentSpace, M4Space, CalabiEckmannSpace, HopfSpace>;

struct SpaceSpec {
  std::string name;
  SpaceData data;
  /// Verdicts that must hold.
  std::vector<std::string> checks;
  /// Verdicts with a required value.
  std::map<std::string, bool> expect;

  std::string type() const;
};

/// Parses one space object. Throws ConfigError on unknown types, missing or
/// extra keys, malformed scalars and out-of-range parameters.
SpaceSpec parse_space(const nlohmann::json& j);
/// Accepts a single space object, an array of them, or {"spaces": [...]}.
std::vector<SpaceSpec> parse_config(const nlohmann::json& j);
std::vector<SpaceSpec> load_config(const std::string& path);
nlohmann::json to_json(const SpaceSpec& spec);

struct Options {
  std::string format = "text";
  /// Threshold for floating-point residuals (coordinate metrics, frame cross-checks).
  double tolerance = 1e-6;
  /// Largest number of positive isotropy roots the flag solver will branch on.
  int solver_cap = 12;
  /// Rejection samples drawn by the flag solver.
  int solver_samples = 10000;
  bool timing = true;
};

struct Verdict {
  std::string name;
  bool value = false;
};

struct SpaceResult {
  std::string name;
  std::string type;
  /// Ordered boolean outcomes; text and JSON are both rendered from this list.
  std::vector<Verdict> verdicts;
  /// Exact scalars and residuals.
  nlohmann::json values = nlohmann::json::object();
  /// Failure witnesses keyed by verdict name.
  std::map<std::string, std::string> witnesses;
  /// Solver output, when a solver ran.
  nlohmann::json solver;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  double seconds = 0;

  std::optional<bool> verdict(const std::string& name) const;
  bool passed() const { return failures.empty(); }
};

struct RunReport {
  std::string command;
  std::string subject;
  std::vector<SpaceResult> spaces;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
};

nlohmann::json to_json(const RunReport& report, bool with_timing = true);
std::string to_text(const RunReport& report, bool with_timing = true);
/// Inverse of to_json for the verdict part; used to compare renderings.
std::map<std::string, std::map<std::string, bool>> verdicts_of(const nlohmann::json& report);
std::map<std::string, std::map<std::string, bool>> verdicts_of_text(const std::string& report);

/// Evaluates every space and compares with its checks and expectations.
RunReport cmd_check(const std::vector<SpaceSpec>& specs, const Options& options);
/// Runs the metric solver for flag, samelson and calabi-eckmann spaces.
RunReport cmd_solve(const std::vector<SpaceSpec>& specs, const Options& options);

struct CatalogEntry {
  SpaceSpec spec;
  std::string description;
};
std::vector<CatalogEntry> builtin_catalog();
/// Checks every built-in entry. With a golden file, each entry's verdicts are
/// compared with the expected flags listed there.
RunReport cmd_catalog(const Options& options, const std::optional<std::string>& golden_path = std::nullopt);

struct TheoremBundle {
  std::string id;
  std::string summary;
};
std::vector<TheoremBundle> theorem_bundles();
/// Throws ConfigError for unknown ids.
RunReport cmd_theorem(const std::string& id, const Options& options);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace btp::cli
