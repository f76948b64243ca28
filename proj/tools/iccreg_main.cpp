#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "icc/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Achievable-region calculator for the two-user Gaussian "
               "interference channel with conferencing encoders"};
  std::string config_path;
  std::string out_dir;
  std::string mode_word;
  int resolution = 0;
  bool no_plot = false;
  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--mode", mode_word,
                 "region, hk, gvbc, relay, ideal or compare (overrides the config)");
  app.add_option("--resolution", resolution, "split-grid resolution (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-plot", no_plot, "skip the overlay SVG");
  CLI11_PARSE(app, argc, argv);

  icc::RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "error: io: cannot open %s\n", config_path.c_str());
        return 4;
      }
      std::ostringstream text;
      text << in.rdbuf();
      config = icc::parse_run_config(text.str());
    }
    if (!mode_word.empty()) config.mode = icc::parse_mode(mode_word);
  } catch (const icc::ConfigError& e) {
    std::fprintf(stderr, "error: config: %s: %s\n",
                 e.field.empty() ? "<document>" : e.field.c_str(), e.what());
    return 2;
  }
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (resolution > 0) config.sweep.resolution = resolution;
  if (no_plot) config.plot = false;
  return icc::execute_for_exit_code(config);
}
