// Command-line front end. One config file per run, one output directory;
// every command is deterministic given (config, seed).

#include <string>

#include "CLI11.hpp"

#include "muso/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nonlocal Neumann-Robin problems in Musielak-Sobolev spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";

  const char* names[] = {"verify-family", "verify-space", "green-check",
                         "gradcheck",     "solve",        "sweep"};
  const char* descs[] = {
      "check the structural conditions of the kernel family",
      "randomized modular/norm relation suite",
      "discrete Green and form/operator identity residuals",
      "finite differences against the energy gradient",
      "minimize the energy for the configured lambda",
      "one solve per lambda in sweep.lambdas"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("-c,--config", config_path, "path to the JSON config")->required();
    sub->add_option("-o,--out", out_dir, "output directory (default: out)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return muso::kExitValidation;
  }

  return muso::run_from_files(app.get_subcommands().front()->get_name(), config_path,
                              out_dir);
}
