#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "elascat/runner.hpp"

using namespace elascat;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kReconText = R"(
[run]
mode = reconstruct
[media]
lambda_i = 2
mu_i = 3
[geometry]
shape = peanut
[inverse]
m = 3
n = 12
max_iter = 3
r0 = 0.5
illuminations = 2
noise_delta = 0.03
seed = 11
[output]
dir = out/test_recon
)";

}  // namespace

TEST_CASE("config parsing: defaults, overrides, errors") {
  const RunConfig c = parse_config_text(kReconText, "inline");
  CHECK(c.mode == "reconstruct");
  CHECK(c.mu_i == 3.0);
  CHECK(c.lambda_e == 1.0);  // default
  CHECK(c.n == 12);
  CHECK(c.seed == 11);
  CHECK(!c.config_hash.empty());

  CHECK_THROWS_AS(parse_config_text("[run]\nmode = fly\n", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[run\nmode = reconstruct\n", "x"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[run]\nmode reconstruct\n", "x"), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text("[run]\nmode = reconstruct\n[geometry]\nshape = blob\n", "x"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config_text(
          "[run]\nmode = verify-forward\n[numerics]\nn_list = 16 8\n", "x"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config_text("[run]\nmode = reconstruct\n[inverse]\nm = 1.5\n", "x"),
      ConfigError);
  // line attribution in messages
  try {
    parse_config_text("[run]\nmode = reconstruct\n[inverse]\nm = bogus\n", "cfg");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg:4") != std::string::npos);
  }
}

TEST_CASE("shape lookup") {
  CHECK_NOTHROW(shape_curve("peanut"));
  CHECK_NOTHROW(shape_curve("apple"));
  CHECK_NOTHROW(shape_curve("kite"));
  CHECK_NOTHROW(shape_curve("circle:1.5"));
  CHECK_THROWS_AS(shape_curve("square"), ConfigError);
}

TEST_CASE("reconstruct runs are byte-deterministic") {
  RunConfig c = parse_config_text(kReconText, "inline");
  c.out_dir = "out/det_a";
  REQUIRE(run_reconstruct(c) == 0);
  const std::string coeffs_a = slurp("out/det_a/recon_coeffs.csv");
  const std::string curves_a = slurp("out/det_a/recon_curves.csv");
  const std::string summary_a = slurp("out/det_a/summary.json");
  c.out_dir = "out/det_b";
  REQUIRE(run_reconstruct(c) == 0);
  CHECK(coeffs_a == slurp("out/det_b/recon_coeffs.csv"));
  CHECK(curves_a == slurp("out/det_b/recon_curves.csv"));
  CHECK(summary_a == slurp("out/det_b/summary.json"));
  CHECK(coeffs_a.rfind("# config=", 0) == 0);  // provenance header

  // a different seed changes the noisy data and the outputs
  c.out_dir = "out/det_c";
  c.seed = 12;
  REQUIRE(run_reconstruct(c) == 0);
  CHECK(coeffs_a != slurp("out/det_c/recon_coeffs.csv"));
}

TEST_CASE("verify-forward writes a decreasing error table") {
  const char* text = R"(
[run]
mode = verify-forward
[media]
lambda_i = 2
mu_i = 2
[geometry]
shape = peanut
source_interior = 0 0.2
source_exterior = 0.4 0.6
[numerics]
n_list = 8 16 24
representation = combined
[output]
dir = out/test_fwd
)";
  const RunConfig c = parse_config_text(text, "inline");
  REQUIRE(run_verify_forward(c) == 0);
  std::ifstream in("out/test_fwd/forward_peanut_combined.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // provenance
  std::getline(in, line);  // header
  double prev_p = 1e30, prev_s = 1e30;
  int rows = 0;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    int n;
    double a, b, cc, d, ep, es;
    ls >> n >> a >> b >> cc >> d >> ep >> es;
    CHECK(ep < prev_p);
    CHECK(es < prev_s);
    prev_p = ep;
    prev_s = es;
    ++rows;
  }
  CHECK(rows == 3);
}
