#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscillax/commands.hpp"

namespace {

std::string p_list_to_string(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using oscillax::RunConfig;
  RunConfig cfg;

  // A config file provides the base table; flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        oscillax::apply_config_file(cfg, argv[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "oscillax: " << e.what() << "\n";
        return 2;
      }
    }
  }

  CLI::App app{"oscillax: mollifier, cutoff and oscillatory-integral toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string p_list_str = p_list_to_string(cfg.p_list);
  app.add_option("--config", config_path, "flat key=value config file");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.dim, "dimension (1 or 2)");
    sub->add_option("--beta", cfg.beta, "plateau radius and norm threshold, in (0,1)");
    sub->add_option("--delta", cfg.delta_plateau, "cutoff plateau radius, in (0,1)");
    sub->add_option("--mollifier", cfg.mollifier,
                    "fast-path-log | diagonal-envelope | linear | constant");
    sub->add_option("--p-list", p_list_str, "comma-separated strictly increasing p values");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--seed", cfg.seed, "seed for sampling checks");
    sub->add_option("--grid-points", cfg.grid_points, "points per axis (power of two)");
    sub->add_option("--extent", cfg.extent, "grid half-width");
    sub->add_option("--config", config_path, "flat key=value config file (pre-parsed)");
  };

  auto* sub_build = app.add_subcommand("build-symbol", "construct the symbol and dump |a|");
  auto* sub_check = app.add_subcommand("check-class", "run the symbol-class estimates");
  auto* sub_blow = app.add_subcommand("blowup", "run the norm-ratio experiment");
  auto* sub_cross = app.add_subcommand("crosscheck", "compare the three evaluators");
  for (auto* s : {sub_build, sub_check, sub_blow, sub_cross}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  try {
    std::stringstream ss(p_list_str);
    std::string tok;
    std::vector<int> ps;
    while (std::getline(ss, tok, ',')) if (!tok.empty()) ps.push_back(std::stoi(tok));
    if (!ps.empty()) cfg.p_list = ps;
  } catch (const std::exception&) {
    std::cerr << "oscillax: bad --p-list\n";
    return 2;
  }

  if (sub_build->parsed()) { cfg.command = "build-symbol"; return oscillax::cmd_build_symbol(cfg); }
  if (sub_check->parsed()) { cfg.command = "check-class"; return oscillax::cmd_check_class(cfg); }
  if (sub_blow->parsed()) { cfg.command = "blowup"; return oscillax::cmd_blowup(cfg); }
  if (sub_cross->parsed()) { cfg.command = "crosscheck"; return oscillax::cmd_crosscheck(cfg); }
  return 2;
}
