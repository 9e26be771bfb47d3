#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinmode/experiments.hpp"
#include "spinmode/results.hpp"

// Scenario files: one JSON document with a versioned schema describing the
// model, its parameters (frequencies in Hz, converted to rad/s once at
// parse) and one protocol to run.  Parsing is strict: unknown keys are
// rejected by name.

namespace spinmode {

enum class Protocol {
  shift_profile,
  ramsey_average_sweep,
  time_resolved,
  compare_models,
  tcl_extract
};

Protocol protocol_from_string(const std::string& name);
std::string to_string(Protocol p);

struct ScenarioError : std::runtime_error {
  enum class Kind { schema, runtime };
  Kind kind;
  ScenarioError(Kind k, const std::string& message)
      : std::runtime_error(message), kind(k) {}
};

struct Scenario {
  int schema = 0;
  std::string name;
  Model model = Model::jc;
  ModelParams params;
  Protocol protocol = Protocol::shift_profile;

  double t_max = 0.0;  // seconds, resolved from *_s or *_periods at parse
  int samples = 0;
  std::vector<double> detuning_over_g;
  int phase_points = 0;
  std::vector<Observable> observables;
  Observable estimator_observable = Observable::sigma_y;
  bool estimate_larmor = false;
  Frame frame = Frame::lab;
  int repetitions = 0;
  std::uint64_t seed = 0;
  double max_condition = 1e8;

  std::filesystem::path directory = ".";
  std::string basename;
  OutputFormat format = OutputFormat::both;

  // exchange-picture parameters (mapped for ion variants)
  ModelParams mapped_params() const;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& file);

struct RunOptions {
  int workers = 1;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::filesystem::path> out_dir;
};

struct RunOutcome {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  // one line per table
};

RunOutcome run_scenario(const nlohmann::json& doc, const RunOptions& options);
RunOutcome run_scenario_file(const std::filesystem::path& file, const RunOptions& options);

}  // namespace spinmode
