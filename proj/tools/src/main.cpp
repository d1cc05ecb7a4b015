#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using orbitsp::cli::RunConfig;
  CLI::App app{"Orbit polytopes of finite orthogonal groups and the semigroup property"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ORBITSP_VERSION);

  RunConfig config;
  std::string input, model, out, off;
  double tol = 1e-9;
  std::size_t samples = 1000;

  for (const auto& [name, command] : orbitsp::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", input, "group file (JSON)");
    sub->add_option("--model", model, "catalog group or continuous model name");
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", tol, "equality tolerance")->capture_default_str();
    sub->add_option("--samples", samples, "sample count")->capture_default_str();
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--export-off", off, "write the hull as OFF (3-dim hulls only)");
    sub->callback([&config, command = command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  CLI::App* used = app.get_subcommands().front();
  if (used->count("--input")) config.input_path = input;
  if (used->count("--model")) config.model_name = model;
  if (used->count("--tol")) config.tolerance = tol;
  if (used->count("--samples")) config.samples = samples;
  if (used->count("--out")) config.output_path = out;
  if (used->count("--export-off")) config.export_off_path = off;
  return orbitsp::cli::run(config, std::cout, std::cerr);
}
