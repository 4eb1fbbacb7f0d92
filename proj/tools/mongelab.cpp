#include "battery.hpp"
#include "mongelab/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"mongelab: optimal transport and metric twist-condition laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", config_path, "Config file")->required();

  std::string instance_name;
  int instance_n = 4;
  std::uint64_t instance_seed = 0;
  bool dump = false;
  auto* instance = app.add_subcommand("instance", "Show a builtin instance");
  instance->add_option("name", instance_name, "Instance name")->required();
  instance->add_option("--n", instance_n, "Atom count for sized instances");
  instance->add_option("--seed", instance_seed, "Seed for random instances");
  instance->add_flag("--dump", dump, "Print the instance as JSON");

  app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand("version")) {
    std::cout << "mongelab " << mongelab::kVersion << '\n';
    return 0;
  }

  if (app.got_subcommand("instance")) {
    try {
      if (!dump) {
        for (const auto& name : mongelab::builtin_instance_names()) std::cout << name << '\n';
        return 0;
      }
      std::cout << mongelab::dump_instance(instance_name, instance_n, instance_seed).dump(2) << '\n';
      return 0;
    } catch (const mongelab::ValidationError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }

  mongelab::json config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open " << config_path << '\n';
      return 2;
    }
    config = mongelab::json::parse(in);
  } catch (const mongelab::json::exception& e) {
    std::cerr << "error: malformed config: " << e.what() << '\n';
    return 2;
  }

  std::optional<std::uint64_t> seed;
  try {
    seed = mongelab::seed_from_env();
  } catch (const mongelab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const mongelab::RunResult result = mongelab::run_experiment(config, seed, [](std::uint64_t s) {
    return mongelab::acceptance::to_json(mongelab::acceptance::run_battery(s));
  });
  if (result.exit_code != 0) {
    std::cerr << "error: " << result.error << '\n';
    return result.exit_code;
  }
  if (!config.contains("output")) std::cout << result.report.dump(2) << '\n';
  else std::cout << "wrote " << config.at("output").get<std::string>() << "/report.json\n";
  return 0;
}
