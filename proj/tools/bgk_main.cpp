#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bgk/runio.hpp"

namespace {

int do_solve(const std::string& config_path, const std::string& out_dir, int threads) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config '" << config_path << "'\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  bgk::RunConfig cfg;
  try {
    cfg = bgk::parse_config(buf.str());
  } catch (const bgk::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const bgk::RunOutputs out = bgk::run_and_emit(cfg, out_dir, threads);
    std::cout << "wrote " << out.macro_csv.parent_path().string() << " ("
              << out.summary.steps.size() - 1 << " steps, dt=" << out.summary.dt
              << ", wall=" << out.summary.wall_seconds << "s)\n";
    return 0;
  } catch (const bgk::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
}

int do_compare(const std::string& a, const std::string& b) {
  try {
    const bgk::CompareReport rep = bgk::compare_macro_csv(a, b);
    std::cout << rep.render();
    return 0;
  } catch (const bgk::Error& e) {
    std::cerr << "compare error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic relaxation solver with per-cell adaptive velocity grids"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  CLI::App* solve = app.add_subcommand("solve", "run a case from a key=value config file");
  solve->add_option("config", config_path, "config file path")->required();
  solve->add_option("--out", out_dir, "output directory (overrides out_dir in the config)");
  solve->add_option("--threads", threads, "worker threads (0 = runtime default, 1 = serial)");

  std::string file_a, file_b;
  CLI::App* cmp = app.add_subcommand("compare", "diff the rho/U/T columns of two macro.csv files");
  cmp->add_option("a", file_a, "first macro.csv")->required();
  cmp->add_option("b", file_b, "second macro.csv")->required();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return do_solve(config_path, out_dir, threads);
  return do_compare(file_a, file_b);
}
