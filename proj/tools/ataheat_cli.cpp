#include <CLI11.hpp>

#include <cstdint>
#include <string>

#include "ataheat/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale greedy unitary-ansatz solver for the periodic heat equation"};
  app.require_subcommand(1);

  ataheat::cli::Options options;
  std::uint64_t seed = 0;
  std::string oracle;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", options.out_dir, "output directory")->required();
    cmd->add_option("--seed", seed, "override the config seed");
    cmd->add_option("--oracle", oracle, "oracle tracking: on or off")
        ->check(CLI::IsMember({"on", "off"}));
  };

  for (const char* verb : {"spectrum", "step", "evolve", "cluster", "resources"}) {
    add_common(app.add_subcommand(verb));
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  options.verb = sub->get_name();
  if (sub->count("--seed") > 0) options.seed = seed;
  if (!oracle.empty()) options.oracle = oracle == "on";

  return ataheat::cli::run_command(options);
}
