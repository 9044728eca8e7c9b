#include "elascat/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace elascat {

namespace {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ParsedFile {
  // section -> key -> (value tokens, line number)
  std::map<std::string, std::map<std::string, std::pair<std::vector<std::string>, int>>> data;
};

ParsedFile tokenize_config(const std::string& text, const std::string& origin) {
  ParsedFile out;
  std::istringstream in(text);
  std::string line, section = "";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::istringstream vs(line.substr(eq + 1));
    std::vector<std::string> tokens;
    std::string tok;
    while (vs >> tok) tokens.push_back(tok);
    if (key.empty() || tokens.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    out.data[section][key] = {tokens, lineno};
  }
  return out;
}

class ConfigReader {
 public:
  ConfigReader(ParsedFile file, std::string origin)
      : file_(std::move(file)), origin_(std::move(origin)) {}

  bool has(const std::string& section, const std::string& key) const {
    const auto s = file_.data.find(section);
    return s != file_.data.end() && s->second.count(key) > 0;
  }

  std::string str(const std::string& section, const std::string& key,
                  const std::string& fallback) const {
    if (!has(section, key)) return fallback;
    return file_.data.at(section).at(key).first[0];
  }

  double num(const std::string& section, const std::string& key, double fallback) const {
    if (!has(section, key)) return fallback;
    return parse_double(section, key, 0);
  }

  int integer(const std::string& section, const std::string& key, int fallback) const {
    const double v = num(section, key, fallback);
    if (v != std::floor(v)) fail(section, key, "expected an integer");
    return static_cast<int>(v);
  }

  Vec2 vec(const std::string& section, const std::string& key, Vec2 fallback) const {
    if (!has(section, key)) return fallback;
    const auto& tokens = file_.data.at(section).at(key).first;
    if (tokens.size() != 2) fail(section, key, "expected two numbers");
    return {parse_double(section, key, 0), parse_double(section, key, 1)};
  }

  std::vector<int> int_list(const std::string& section, const std::string& key,
                            std::vector<int> fallback) const {
    if (!has(section, key)) return fallback;
    const auto& tokens = file_.data.at(section).at(key).first;
    std::vector<int> out;
    for (std::size_t i = 0; i < tokens.size(); ++i)
      out.push_back(static_cast<int>(parse_double(section, key, i)));
    return out;
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& what) const {
    const int line = file_.data.at(section).at(key).second;
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": [" + section + "] " + key +
                      ": " + what);
  }

 private:
  double parse_double(const std::string& section, const std::string& key,
                      std::size_t idx) const {
    const auto& tokens = file_.data.at(section).at(key).first;
    if (idx >= tokens.size()) fail(section, key, "missing value");
    try {
      std::size_t used = 0;
      const double v = std::stod(tokens[idx], &used);
      if (used != tokens[idx].size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      fail(section, key, "cannot parse number '" + tokens[idx] + "'");
    }
  }

  ParsedFile file_;
  std::string origin_;
};

Representation parse_representation(const std::string& name) {
  if (name == "combined") return Representation::Combined;
  if (name == "single") return Representation::SingleLayer;
  if (name == "double") return Representation::DoubleLayer;
  throw ConfigError("unknown representation '" + name + "'");
}

std::ofstream open_output(const std::filesystem::path& path, const std::string& hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << "# config=" << hash << " version=" << kVersion << "\n";
  return out;
}

}  // namespace

BoundaryCurve shape_curve(const std::string& name) {
  if (name == "peanut") return peanut();
  if (name == "apple") return apple();
  if (name == "kite") return kite();
  if (name.rfind("circle:", 0) == 0) return circle(std::stod(name.substr(7)));
  throw ConfigError("unknown shape '" + name + "'");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  const ConfigReader r(tokenize_config(text, origin), origin);
  RunConfig c;
  c.mode = r.str("run", "mode", "");
  if (c.mode != "verify-forward" && c.mode != "reconstruct")
    throw ConfigError(origin + ": [run] mode must be verify-forward or reconstruct");

  c.lambda_e = r.num("media", "lambda_e", c.lambda_e);
  c.mu_e = r.num("media", "mu_e", c.mu_e);
  c.rho_e = r.num("media", "rho_e", c.rho_e);
  c.lambda_i = r.num("media", "lambda_i", c.lambda_i);
  c.mu_i = r.num("media", "mu_i", c.mu_i);
  c.rho_i = r.num("media", "rho_i", c.rho_i);
  c.omega = r.num("media", "omega", c.omega);

  c.shape = r.str("geometry", "shape", c.shape);
  shape_curve(c.shape);  // validate now, with attribution
  c.source_interior = r.vec("geometry", "source_interior", c.source_interior);
  c.source_exterior = r.vec("geometry", "source_exterior", c.source_exterior);

  c.n_list = r.int_list("numerics", "n_list", c.n_list);
  for (std::size_t i = 1; i < c.n_list.size(); ++i)
    if (c.n_list[i] <= c.n_list[i - 1])
      throw ConfigError(origin + ": [numerics] n_list must be strictly increasing");
  c.representation = r.str("numerics", "representation", c.representation);
  parse_representation(c.representation);

  c.m = r.integer("inverse", "m", c.m);
  c.n = r.integer("inverse", "n", c.n);
  c.lambda0 = r.num("inverse", "lambda0", c.lambda0);
  c.decay = r.num("inverse", "decay", c.decay);
  c.p = r.integer("inverse", "p", c.p);
  c.max_iter = r.integer("inverse", "max_iter", c.max_iter);
  c.r0 = r.num("inverse", "r0", c.r0);
  c.illuminations = r.integer("inverse", "illuminations", c.illuminations);
  c.noise_delta = r.num("inverse", "noise_delta", c.noise_delta);
  c.seed = static_cast<std::uint64_t>(r.num("inverse", "seed", 0.0));

  c.out_dir = r.str("output", "dir", c.out_dir);

  c.config_hash = fnv1a_hex(text + "|seed=" + std::to_string(c.seed));
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

int run_verify_forward(const RunConfig& c) {
  const ElasticMedium interior(c.lambda_i, c.mu_i, c.rho_i, c.omega);
  const ElasticMedium exterior(c.lambda_e, c.mu_e, c.rho_e, c.omega);
  const BoundaryCurve curve = shape_curve(c.shape);
  const Representation rep = parse_representation(c.representation);

  const std::vector<ConvergenceRow> rows = convergence_study(
      interior, exterior, curve, c.source_interior, c.source_exterior, c.n_list, rep);

  std::filesystem::create_directories(c.out_dir);
  const std::filesystem::path table =
      std::filesystem::path(c.out_dir) / ("forward_" + c.shape + "_" + c.representation + ".csv");
  std::ofstream out = open_output(table, c.config_hash);
  out << "n,re_up_x_at_0,im_up_x_at_0,re_us_y_at_quarter,im_us_y_at_quarter,err_p,err_s\n";
  for (const ConvergenceRow& r : rows)
    out << r.n << ',' << fmt(r.sample_p.real()) << ',' << fmt(r.sample_p.imag()) << ','
        << fmt(r.sample_s.real()) << ',' << fmt(r.sample_s.imag()) << ',' << fmt(r.err_p)
        << ',' << fmt(r.err_s) << '\n';
  out.close();

  nlohmann::json summary;
  summary["mode"] = "verify-forward";
  summary["config"] = c.config_hash;
  summary["version"] = kVersion;
  summary["shape"] = c.shape;
  summary["representation"] = c.representation;
  for (const ConvergenceRow& r : rows) {
    summary["rows"].push_back({{"n", r.n}, {"err_p", r.err_p}, {"err_s", r.err_s}});
  }
  std::ofstream js(std::filesystem::path(c.out_dir) / "summary.json", std::ios::binary);
  js << summary.dump(2) << '\n';
  return 0;
}

int run_reconstruct(const RunConfig& c) {
  const ElasticMedium interior(c.lambda_i, c.mu_i, c.rho_i, c.omega);
  const ElasticMedium exterior(c.lambda_e, c.mu_e, c.rho_e, c.omega);
  const BoundaryCurve truth = shape_curve(c.shape);

  ReconstructionConfig rc;
  rc.m = c.m;
  rc.n = c.n;
  rc.lambda0 = c.lambda0;
  rc.decay = c.decay;
  rc.p = c.p;
  rc.max_iter = c.max_iter;
  rc.r0 = c.r0;
  rc.illuminations = pwave_ring(c.illuminations);
  rc.noise_delta = c.noise_delta;
  rc.rng_seed = c.seed;
  rc.validate();

  std::vector<FarFieldStack> data =
      synthesize_data(interior, exterior, truth, rc.n, rc.illuminations);
  if (rc.noise_delta > 0.0)
    for (std::size_t l = 0; l < data.size(); ++l)
      data[l] = add_noise(data[l], rc.noise_delta, rc.rng_seed + l);

  const ReconstructionResult res = reconstruct(interior, exterior, rc, data);

  std::filesystem::create_directories(c.out_dir);
  {
    std::ofstream out = open_output(
        std::filesystem::path(c.out_dir) / "recon_coeffs.csv", c.config_hash);
    out << "iter,lambda,residual,step_h1";
    for (int k = 0; k <= c.m; ++k) out << ",a" << k;
    for (int k = 1; k <= c.m; ++k) out << ",b" << k;
    out << '\n';
    for (const ReconstructionState& s : res.trajectory) {
      out << s.iter << ',' << fmt(s.lambda) << ',' << fmt(s.residual) << ','
          << fmt(s.step_norm);
      for (double v : s.r.a) out << ',' << fmt(v);
      for (double v : s.r.b) out << ',' << fmt(v);
      out << '\n';
    }
  }

  const BoundaryCurve rec_curve = res.final_r.as_curve();
  const int curve_samples = 256;
  double l2_err = 0.0;
  {
    std::ofstream out = open_output(
        std::filesystem::path(c.out_dir) / "recon_curves.csv", c.config_hash);
    out << "theta,r_exact,r_initial,r_reconstructed\n";
    for (int i = 0; i < curve_samples; ++i) {
      const double theta = 2.0 * kPi * i / curve_samples;
      const double re = polar_radius(truth, theta);
      const double rr = polar_radius(rec_curve, theta);
      out << fmt(theta) << ',' << fmt(re) << ',' << fmt(c.r0) << ',' << fmt(rr) << '\n';
      l2_err += (re - rr) * (re - rr);
    }
    l2_err = std::sqrt(l2_err * 2.0 * kPi / curve_samples);
  }

  nlohmann::json summary;
  summary["mode"] = "reconstruct";
  summary["config"] = c.config_hash;
  summary["version"] = kVersion;
  summary["shape"] = c.shape;
  summary["iterations"] = res.iterations;
  summary["early_stop"] = res.early_stop;
  summary["radial_l2_error"] = l2_err;
  summary["initial_residual"] = res.residual_history.empty() ? 0.0 : res.residual_history.front();
  summary["final_residual"] = res.residual_history.empty() ? 0.0 : res.residual_history.back();
  std::ofstream js(std::filesystem::path(c.out_dir) / "summary.json", std::ios::binary);
  js << summary.dump(2) << '\n';
  return 0;
}

}  // namespace elascat
