#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <polaron/error.hpp>
#include <polaron/parallel.hpp>
#include <polaron/version.hpp>

#include "config.hpp"
#include "presets.hpp"
#include "run.hpp"

namespace {

// POLARON_THREADS sets the default; --threads wins.
int threads_from_env() {
  const char* env = std::getenv("POLARON_THREADS");
  if (!env || !*env) return 0;
  try {
    const int n = std::stoi(env);
    if (n < 1) throw std::invalid_argument(env);
    return n;
  } catch (const std::exception&) {
    throw polaron::ConfigError(std::string("POLARON_THREADS must be a positive integer, got '") +
                               env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace app = polaron::app;

  CLI::App cli{"Momentum-resolved spectral function of a Holstein polaron on a ring"};
  std::string config_path, preset, mode, output;
  std::vector<std::string> overrides;
  int threads = 0;
  bool list = false;

  cli.add_option("--config", config_path, "INI or JSON run configuration")->check(CLI::ExistingFile);
  cli.add_option("--preset", preset, "start from a shipped preset (see --list-presets)");
  cli.add_option("--mode", mode, "params | spectrum | oracle | ramsey | sweep");
  cli.add_option("--output", output, "output directory");
  cli.add_option("--threads", threads, "worker threads (default: POLARON_THREADS)")
      ->check(CLI::PositiveNumber);
  cli.add_option("--set", overrides, "override a key, e.g. --set kpm.n_moments=1024");
  cli.add_flag("--list-presets", list, "print the shipped presets and exit");
  cli.set_version_flag("--version", std::string(polaron::version()));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = cli.exit(e);
    return status == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& p : app::presets()) std::cout << p.name << "\t" << p.summary << "\n";
    return 0;
  }

  try {
    app::KeyValues values;
    if (!preset.empty()) values = app::preset_values(preset);
    if (!config_path.empty()) {
      for (auto& [key, value] : app::load_config_file(config_path)) values[key] = value;
    }
    for (const auto& o : overrides) app::apply_override(values, o);
    if (!mode.empty()) values["run.mode"] = mode;
    if (!output.empty()) values["run.output"] = output;
    if (values.empty()) throw polaron::ConfigError("nothing to run: give --config or --preset");

    const int n = threads > 0 ? threads : threads_from_env();
    if (n > 0) polaron::parallel::set_threads(n);

    const app::RunConfig config = app::resolve(values);
    const app::RunResult result = app::run(config, std::cout, std::cerr);
    for (const auto& f : result.files) std::cerr << "wrote " << f.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "polaron: error: " << e.what() << "\n";
    return app::exit_code(e);
  }
}
