#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dtn/errors.hpp"
#include "dtn/presets.hpp"
#include "dtn/report.hpp"
#include "dtn/simulator.hpp"

namespace {

struct Options {
  std::optional<std::uint64_t> seed;
  std::string report = "text";
  std::string trace_path;
  bool emit = false;
};

void add_run_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "Override the scenario seed");
  cmd->add_option("--report", opt.report, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--trace", opt.trace_path, "Write the event trace (JSONL) here");
}

int execute(dtn::Scenario scenario, const Options& opt) {
  if (opt.seed) scenario.seed = *opt.seed;

  if (opt.emit) {
    std::cout << dtn::scenario_to_json(scenario).dump(2) << "\n";
    return 0;
  }

  dtn::RunResult result = dtn::run(scenario);

  if (!opt.trace_path.empty()) {
    std::ofstream out(opt.trace_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << opt.trace_path << "\n";
      return 1;
    }
    out << result.trace.to_jsonl();
  }

  if (opt.report == "json")
    std::cout << dtn::report_json(scenario.name, scenario.seed, result.metrics).dump(2)
              << "\n";
  else if (opt.report == "csv")
    std::cout << dtn::report_csv(result.metrics);
  else
    std::cout << dtn::report_text(scenario.name, scenario.seed, result.metrics);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disruption-tolerant networking simulator"};
  app.require_subcommand(1);

  Options run_opt;
  std::string scenario_path;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  add_run_options(run_cmd, run_opt);
  run_cmd->add_flag("--emit", run_opt.emit,
                    "Print the parsed scenario as JSON instead of running");

  Options preset_opt;
  std::string preset_name;
  CLI::App* preset_cmd = app.add_subcommand("preset", "Run a built-in scenario");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();
  add_run_options(preset_cmd, preset_opt);
  preset_cmd->add_flag("--emit", preset_opt.emit,
                       "Print the preset as JSON instead of running");

  CLI::App* list_cmd = app.add_subcommand("presets", "List built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const std::string& name : dtn::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (run_cmd->parsed())
      return execute(dtn::load_scenario(scenario_path), run_opt);
    return execute(dtn::preset(preset_name), preset_opt);
  } catch (const dtn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
