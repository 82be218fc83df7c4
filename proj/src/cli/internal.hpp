#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "btp/cli.hpp"
#include "btp/flagspace.hpp"
#include "btp/groupgeom.hpp"
#include "btp/hermgeo.hpp"

namespace btp::cli::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Accumulates verdicts for one report entry; a required verdict that is false
/// becomes a failure carrying its witness.
class Recorder {
 public:
  Recorder(std::string name, std::string type);

  void require(const std::string& verdict, bool value, const std::string& witness = "");
  /// Records a verdict and fails unless it equals the wanted value.
  void expect(const std::string& verdict, bool value, bool wanted, const std::string& witness = "");
  void note(const std::string& verdict, bool value, const std::string& witness = "");
  void value(const std::string& key, nlohmann::json v) { result_.values[key] = std::move(v); }
  void fail(const std::string& message) { result_.failures.push_back(message); }
  void warn(const std::string& message) { result_.warnings.push_back(message); }
  void solver(nlohmann::json s) { result_.solver = std::move(s); }
  SpaceResult& result() { return result_; }
  SpaceResult finish();

 private:
  SpaceResult result_;
  Stopwatch clock_;
};

FlagManifold flag_manifold(const FlagSpace& s);
FlagMetric flag_metric(const FlagManifold& fm, const FlagSpace& s);
SamelsonStructure samelson_structure(const SamelsonSpace& s);
SamelsonMetric samelson_metric(const SamelsonStructure& st, const SamelsonSpace& s);
NilpotentNormalForm nilpotent_form(const NilpotentSpace& s);
CalabiEckmannParams calabi_eckmann_params(const CalabiEckmannSpace& s);
Mat calabi_eckmann_map(const CalabiEckmannSpace& s);

/// The exact invariant model of a space; nullopt for coordinate metrics.
std::optional<InfinitesimalModel> exact_model(const SpaceSpec& spec);

/// Evaluates one space without applying its checks or expectations.
SpaceResult evaluate_space(const SpaceSpec& spec, const Options& options);
/// Applies checks and expectations to an evaluated space.
void apply_expectations(const SpaceSpec& spec, SpaceResult& result);

std::string witness_text(const InfinitesimalModel& model, const ConditionResult& res);
bool hermitian_symmetric(const FlagManifold& fm);
nlohmann::json rational_vector(const std::vector<Q>& v);

}  // namespace btp::cli::detail
