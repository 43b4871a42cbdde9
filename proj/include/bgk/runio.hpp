#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "bgk/cases.hpp"
#include "bgk/diagnostics.hpp"

namespace bgk {

// A fully resolved run request: case plus solver options, defaults filled in
// from the case where the config is silent.
struct RunConfig {
  std::string case_name;
  std::string solver = "lvg";  // lvg | reference
  int order = 2;
  double cfl = 0.0;
  int nx = 0;
  int nv0 = 0;
  double alpha = 10.0;
  double beta = 0.5;
  double tol = 1e-6;
  double theta = 1.5;
  std::optional<double> epsilon;  // overrides the case's collision model
  std::optional<double> tau_c;
  double tau_omega = -0.19;
  double t_final = 0.0;
  std::string out_dir = "out";

  TestCase test;  // resolved case with the collision model applied

  SolverConfig solver_config(int threads) const;
};

// key=value lines; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config(const std::string& text);

struct RunOutputs {
  RunSummary summary;
  std::filesystem::path macro_csv;
  std::filesystem::path grids_csv;
  std::filesystem::path tau_csv;  // empty unless the collision model is the tau law
  std::filesystem::path conservation_csv;
  std::filesystem::path report_txt;
};

// Runs the configured case and writes macro.csv, grids.csv, tau.csv,
// conservation.csv and report.txt under out_dir.
RunOutputs run_and_emit(const RunConfig& cfg, const std::string& out_dir_override = "",
                        int threads = 1);

struct ColumnDiff {
  std::string name;
  double l1_rel = 0.0;
  double linf_abs = 0.0;
  double linf_rel = 0.0;
};

struct CompareReport {
  std::vector<ColumnDiff> columns;
  std::string render() const;
};

// L1/Linf differences of the rho, U, T columns of two macro.csv files on
// matching meshes.
CompareReport compare_macro_csv(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace bgk
