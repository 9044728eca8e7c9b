#ifndef ELASCAT_RUNNER_HPP
#define ELASCAT_RUNNER_HPP

#include <string>

#include "elascat/inverse.hpp"

namespace elascat {

inline constexpr const char* kVersion = "0.1.0";

// Parsed run configuration (single key/value file with [sections]).
struct RunConfig {
  std::string mode;  // "verify-forward" or "reconstruct"

  // media
  double lambda_e = 1.0, mu_e = 1.0, rho_e = 1.0;
  double lambda_i = 2.0, mu_i = 2.0, rho_i = 1.0;
  double omega = 8.0;

  // geometry
  std::string shape = "peanut";
  Vec2 source_interior{0.0, 0.2};
  Vec2 source_exterior{0.4, 0.6};

  // numerics (verify-forward)
  std::vector<int> n_list{8, 16, 32, 64};
  std::string representation = "combined";

  // inverse
  int m = 3;
  int n = 32;
  double lambda0 = 0.8;
  double decay = 2.0 / 3.0;
  int p = 1;
  int max_iter = 40;
  double r0 = 0.5;
  int illuminations = 2;
  double noise_delta = 0.0;
  std::uint64_t seed = 0;

  // output
  std::string out_dir = "out";

  // filled by the parser: hash of the raw config text plus the seed
  std::string config_hash;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

BoundaryCurve shape_curve(const std::string& name);

// Drivers; both write delimited tables plus a structured summary under
// config.out_dir and return 0 on success.
int run_verify_forward(const RunConfig& config);
int run_reconstruct(const RunConfig& config);

}  // namespace elascat

#endif
