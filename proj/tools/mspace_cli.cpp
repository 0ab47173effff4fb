#include <CLI11.hpp>

#include <iostream>

#include "mspace/errors.hpp"
#include "mspace/parallel.hpp"
#include "mspace/study.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sampling and large-sieve studies for model spaces"};
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;
  app.add_option("--config", config_path, "JSON study configuration")->required();
  app.add_option("--out", out_dir, "Directory for reports");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (threads == 0) threads = mspace::default_threads();

  mspace::StudyConfig config;
  try {
    config = mspace::load_config(config_path);
  } catch (const mspace::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  try {
    const auto result = mspace::run_study(config, out_dir, threads);
    std::cout << result.summary;
    for (const auto& r : result.reports) std::cout << "wrote " << r.string() << '\n';
    if (result.exit_code == 2) std::cerr << "error: certified inequality violated\n";
    return result.exit_code;
  } catch (const mspace::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
