#include "oscillax/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace oscillax {

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["defaults_version"] = RunConfig::kDefaultsVersion;
  j["command"] = cfg.command;
  j["n"] = cfg.dim;
  j["beta"] = cfg.beta;
  j["delta"] = cfg.delta_plateau;
  j["mollifier"] = cfg.mollifier;
  j["p_list"] = cfg.p_list;
  j["grid_points"] = cfg.resolved_grid_points();
  j["extent"] = cfg.extent;
  j["z_max"] = cfg.z_max;
  j["ft_grid_size"] = cfg.ft_grid_size;
  j["box_quad_points"] = cfg.box_quad_points;
  j["theta_decades"] = {cfg.theta_decade_lo, cfg.theta_decade_hi};
  j["theta_per_decade"] = cfg.theta_per_decade;
  j["x_octaves"] = cfg.x_octaves;
  j["x_per_octave"] = cfg.x_per_octave;
  j["full_domain_norm"] = cfg.full_domain_norm;
  j["out"] = cfg.out;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: missing '=' at " + path + ":" +
                               std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "n") cfg.dim = std::stoi(val);
    else if (key == "beta") cfg.beta = std::stod(val);
    else if (key == "delta") cfg.delta_plateau = std::stod(val);
    else if (key == "mollifier") cfg.mollifier = val;
    else if (key == "p_list") cfg.p_list = parse_int_list(val);
    else if (key == "grid_points") cfg.grid_points = std::stoi(val);
    else if (key == "extent") cfg.extent = std::stod(val);
    else if (key == "z_max") cfg.z_max = std::stod(val);
    else if (key == "ft_grid_size") cfg.ft_grid_size = std::stoi(val);
    else if (key == "box_quad_points") cfg.box_quad_points = std::stoi(val);
    else if (key == "theta_decade_lo") cfg.theta_decade_lo = std::stoi(val);
    else if (key == "theta_decade_hi") cfg.theta_decade_hi = std::stoi(val);
    else if (key == "theta_per_decade") cfg.theta_per_decade = std::stoi(val);
    else if (key == "x_octaves") cfg.x_octaves = std::stoi(val);
    else if (key == "x_per_octave") cfg.x_per_octave = std::stoi(val);
    else if (key == "full_domain_norm") cfg.full_domain_norm = (val == "true" || val == "1");
    else if (key == "out") cfg.out = val;
    else if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "threads") cfg.threads = std::stoi(val);
    else
      throw std::runtime_error("config: unknown key '" + key + "' at " + path + ":" +
                               std::to_string(lineno));
  }
}

Mollifier build_mollifier(const std::string& name) {
  if (name == "fast-path-log") return smooth_mollifier(iterated_log_seed(1));
  if (name == "diagonal-envelope") {
    const auto family = make_iterated_log_family(3);
    return smooth_mollifier(weight_to_seed(diagonal_envelope(family)));
  }
  if (name == "linear") return linear_mollifier();
  if (name == "constant") return constant_mollifier(1.0);
  throw std::domain_error("unknown mollifier selection '" + name +
                          "' (expected fast-path-log | diagonal-envelope | linear | constant)");
}

}  // namespace oscillax
