#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "app.hpp"

int main(int argc, char** argv) {
  using namespace spoja::app;
  CLI::App cli{"Sparse Oja experiments"};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  Options opt;
  cli.add_option("--config", config_path, "JSON configuration file (defaults apply when omitted)");
  cli.add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
  cli.add_option("--threads", opt.threads, "Worker threads, 0 for all cores")->capture_default_str();
  auto* seed_opt = cli.add_option("--seed", seed, "Overrides the configured seed");
  cli.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  for (const char* name : {"compare", "concentration", "verify-bounds", "boost-demo"}) cli.add_subcommand(name);
  cli.get_subcommand("compare")->description("Compare sparse PCA pipelines on a grid of sample sizes");
  cli.get_subcommand("concentration")->description("Log-magnitude trajectories and product-moment growth");
  cli.get_subcommand("verify-bounds")->description("Check moment and tail bounds by Monte Carlo");
  cli.get_subcommand("boost-demo")->description("Bucketed success boosting on a spiked model");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  if (seed_opt->count() > 0) opt.seed = seed;
  opt.format = format == "json" ? Format::json : Format::csv;
  if (!config_path.empty()) {
    try {
      opt.config_text = read_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_config;
    }
  }
  const std::string command = cli.get_subcommands().front()->get_name();
  return run_command(command, opt, std::cerr);
}
