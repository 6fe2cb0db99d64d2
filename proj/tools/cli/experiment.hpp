#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <heightlat/heightlat.hpp>

namespace heightlat::cli {

/// Invalid configuration. field() is the dotted path of the offending entry
/// ("sampler.sweeps"), or empty for syntax errors.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : "config field '" + field + "': " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Experiment { kSample, kEnumerate, kVerify, kVarianceGrowth, kLevelset, kConvert, kTrifurcationDemo };

Experiment experiment_from_name(const std::string& name);  // throws ConfigError("experiment")
std::string experiment_name(Experiment e);

struct BoundarySpec {
  enum class Kind { kZero, kFile } kind = Kind::kZero;
  std::filesystem::path path;  // kFile: JSON {"domain": ..., "tau": ...}
};

struct SamplerSpec {
  enum class Kind { kCftp, kGlauber } kind = Kind::kCftp;
  std::uint64_t sweeps = 1000;  // Glauber burn-in
  std::uint64_t thinning = 10;  // Glauber spacing between kept states
  std::int64_t initial_horizon = 0;  // CFTP; 0 picks suggested_initial_horizon
  std::uint64_t max_epochs = std::uint64_t{1} << 24;
};

struct TrifurcationSpec {
  int half_width = 20;
  int radius = 3;
  std::vector<Vertex> centers;
  /// Optional expected (real, alternative) answers, one per center.
  std::vector<std::pair<bool, bool>> expect;
};

struct VerifySpec {
  std::size_t cftp_samples = 20000;
  std::size_t fkg_pairs = 20;
  /// Exhaustive kernel checks only run when the state space is this small.
  std::size_t max_states = 200;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kSample;
  std::size_t dimension = 2;
  std::vector<int> Ls;
  BoundarySpec boundary;
  SamplerSpec sampler;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::filesystem::path output = "heightlat_out";
  std::size_t threads = 0;
  std::vector<Height> levels;  // levelset; empty means every level present
  std::filesystem::path input;   // convert
  std::string format = "coloring";  // convert: coloring | six-vertex | json
  bool require_trend = false;       // variance-growth
  double min_r2 = 0.95;
  TrifurcationSpec trifurcation;
  VerifySpec verify;
  nlohmann::json source;  // the validated JSON the config came from
};

/// Relative boundary file paths resolve against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
/// Reads a JSON file; syntax errors carry the line and column.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// 16 hex digits of FNV-1a over the canonical (sorted-key) dump.
std::string config_hash(const nlohmann::json& j);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct RunResult {
  std::vector<CheckResult> checks;
  nlohmann::json manifest;
  std::vector<std::filesystem::path> artifacts;
  bool all_pass() const;
  int exit_code() const { return all_pass() ? 0 : 1; }
};

/// Runs the experiment, writes its artifacts and manifest.json under
/// config.output.
RunResult run(const ExperimentConfig& config);

}  // namespace heightlat::cli
