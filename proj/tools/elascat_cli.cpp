// Command-line front end: forward verification tables and boundary
// reconstructions driven by a single config file.

#include <CLI11.hpp>

#include <cstdio>

#include "elascat/quadrature.hpp"
#include "elascat/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"2D elastic inclusion scattering: forward verification and "
               "boundary reconstruction"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  long long seed = -1;

  CLI::App* verify = app.add_subcommand("verify-forward",
                                        "far-field convergence against the "
                                        "point-source solution");
  verify->add_option("--config", config_path, "run configuration file")->required();
  verify->add_option("--out", out_dir, "output directory (overrides config)");
  verify->add_option("--threads", threads, "worker thread cap");

  CLI::App* recon = app.add_subcommand("reconstruct",
                                       "iterative boundary reconstruction from "
                                       "synthetic far-field data");
  recon->add_option("--config", config_path, "run configuration file")->required();
  recon->add_option("--out", out_dir, "output directory (overrides config)");
  recon->add_option("--seed", seed, "noise seed (overrides config)");
  recon->add_option("--threads", threads, "worker thread cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads > 0) elascat::set_default_threads(threads);
    elascat::RunConfig config = elascat::parse_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (seed >= 0) {
      config.seed = static_cast<std::uint64_t>(seed);
      config.config_hash += "-s" + std::to_string(config.seed);
    }
    if (app.got_subcommand(verify)) {
      if (config.mode != "verify-forward")
        throw elascat::ConfigError("config mode is '" + config.mode +
                                   "', expected verify-forward");
      return elascat::run_verify_forward(config);
    }
    if (config.mode != "reconstruct")
      throw elascat::ConfigError("config mode is '" + config.mode +
                                 "', expected reconstruct");
    return elascat::run_reconstruct(config);
  } catch (const elascat::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const elascat::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
