#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spinmode/scenario.hpp"
#include "spinmode/version.hpp"

namespace {

struct RunArgs {
  std::string file;
  int workers = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

int execute(const RunArgs& args, std::optional<spinmode::Protocol> expected) {
  try {
    if (expected) {
      const spinmode::Scenario sc = spinmode::load_scenario(args.file);
      if (sc.protocol != *expected) {
        std::cerr << "error: " << args.file << " declares protocol '"
                  << spinmode::to_string(sc.protocol) << "', not '"
                  << spinmode::to_string(*expected) << "'\n";
        return 2;
      }
    }
    spinmode::RunOptions options;
    options.workers = args.workers;
    options.seed_override = args.seed;
    options.out_dir = args.out_dir;
    const spinmode::RunOutcome outcome = spinmode::run_scenario_file(args.file, options);
    for (const auto& line : outcome.summary) std::cout << line << "\n";
    for (const auto& path : outcome.files) std::cout << "wrote " << path.string() << "\n";
    return 0;
  } catch (const spinmode::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == spinmode::ScenarioError::Kind::schema ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

int validate(const std::string& file) {
  try {
    const spinmode::Scenario sc = spinmode::load_scenario(file);
    std::cout << "ok: " << file << " (" << sc.name << ", model " << spinmode::to_string(sc.model)
              << ", protocol " << spinmode::to_string(sc.protocol) << ")\n";
    return 0;
  } catch (const spinmode::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

void add_run_options(CLI::App* sub, RunArgs& args) {
  sub->add_option("file", args.file, "scenario JSON file")->required();
  sub->add_option("--workers", args.workers, "worker threads for independent grid points")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", args.seed, "override the scenario seed");
  sub->add_option("--out", args.out_dir, "override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exchange-model renormalization toolkit"};
  app.set_version_flag("--version", spinmode::kVersion);
  app.require_subcommand(1);

  int exit_code = 0;
  RunArgs args;

  std::string validate_file;
  CLI::App* sub = app.add_subcommand("validate", "check a scenario file without running it");
  sub->add_option("file", validate_file, "scenario JSON file")->required();
  sub->callback([&] { exit_code = validate(validate_file); });

  sub = app.add_subcommand("run", "run a scenario of any protocol");
  add_run_options(sub, args);
  sub->callback([&] { exit_code = execute(args, std::nullopt); });

  const std::pair<const char*, spinmode::Protocol> protocols[] = {
      {"shift-profile", spinmode::Protocol::shift_profile},
      {"ramsey-sweep", spinmode::Protocol::ramsey_average_sweep},
      {"time-resolved", spinmode::Protocol::time_resolved},
      {"compare-models", spinmode::Protocol::compare_models},
      {"tcl-extract", spinmode::Protocol::tcl_extract},
  };
  for (const auto& [name, protocol] : protocols) {
    sub = app.add_subcommand(name, std::string("run a ") + spinmode::to_string(protocol) +
                                       " scenario");
    add_run_options(sub, args);
    sub->callback([&, protocol] { exit_code = execute(args, protocol); });
  }

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
