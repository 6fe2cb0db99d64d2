// heightlat <subcommand> --config FILE [--seed N] [--out DIR] [overrides]
#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/experiment.hpp"

using heightlat::cli::ConfigError;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"Uniform height functions on Z^d: exact sampling, enumeration and diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> dim, samples, threads;
  std::vector<int> Ls;
  std::optional<std::string> boundary, boundary_file, sampler;
  std::optional<std::uint64_t> sweeps;
  bool quiet = false;

  const std::pair<const char*, const char*> subcommands[] = {
      {"sample", "Draw samples and write height dumps"},
      {"enumerate", "Count extensions and write exact marginals"},
      {"verify", "Run the exact-oracle check suite on small balls"},
      {"variance-growth", "Estimate Var f_L(0) against L"},
      {"levelset", "Export level lines of a sample (d = 2)"},
      {"convert", "Convert a height dump to colorings, six-vertex data or JSON"},
      {"trifurcation-demo", "Trifurcation tests on the comb configuration"},
  };
  for (const auto& [name, description] : subcommands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--dim", dim, "Dimension d");
    sub->add_option("--L", Ls, "Ball radius (repeatable)");
    sub->add_option("--boundary", boundary, "Boundary condition")->check(CLI::IsMember({"zero", "file"}));
    sub->add_option("--boundary-file", boundary_file, "Boundary JSON for --boundary file");
    sub->add_option("--sampler", sampler, "Sampler")->check(CLI::IsMember({"cftp", "glauber"}));
    sub->add_option("--sweeps", sweeps, "Glauber burn-in sweeps");
    sub->add_option("--samples", samples, "Samples per L");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sub->add_flag("--quiet", quiet, "Only print failures");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    json j = config_path.empty() ? json::object() : heightlat::cli::read_config_file(config_path);
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    if (j.contains("experiment") && j["experiment"] != name) {
      throw ConfigError("experiment", "config is for '" + j["experiment"].dump() + "' but the subcommand is '" + name + "'");
    }
    j["experiment"] = name;
    if (seed) j["seed"] = *seed;
    if (out) j["output"] = *out;
    if (dim) j["dimension"] = *dim;
    if (!Ls.empty()) j["L"] = Ls;
    if (samples) j["samples"] = *samples;
    if (threads) j["threads"] = *threads;
    if (boundary) {
      if (!j.contains("boundary") || !j["boundary"].is_object()) j["boundary"] = json::object();
      j["boundary"]["kind"] = *boundary;
    }
    if (boundary_file) {
      if (!j.contains("boundary") || !j["boundary"].is_object()) j["boundary"] = {{"kind", "file"}};
      j["boundary"]["path"] = *boundary_file;
    }
    if (sampler || sweeps) {
      if (!j.contains("sampler") || !j["sampler"].is_object()) j["sampler"] = json::object();
      if (sampler) j["sampler"]["kind"] = *sampler;
      if (sweeps) j["sampler"]["sweeps"] = *sweeps;
    }
    const auto base = config_path.empty() ? std::filesystem::path{} : std::filesystem::path(config_path).parent_path();
    const auto cfg = heightlat::cli::parse_config(j, base);
    const auto result = heightlat::cli::run(cfg);
    for (const auto& c : result.checks) {
      if (!quiet || !c.pass) std::printf("%s  %s  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    }
    std::printf("manifest: %s\n", (cfg.output / "manifest.json").string().c_str());
    return result.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "ConfigError: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
