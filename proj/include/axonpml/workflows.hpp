#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axonpml/config.hpp"
#include "axonpml/linsolve.hpp"
#include "axonpml/postproc.hpp"

namespace axonpml {

struct RunContext {
  std::filesystem::path out_root = "out";
  bool quiet = false;
  std::optional<int> levels;  // overrides mesh.levels
};

/// Writes to <out>/log.txt and, unless quiet, to stdout.
class RunLog {
 public:
  RunLog(const std::filesystem::path& file, bool quiet);
  void info(const std::string& line);
  void warn(const std::string& line);

 private:
  std::ofstream file_;
  bool quiet_;
};

/// Creates out/<name>/{fields,tables} and writes config.echo.
std::filesystem::path prepare_output(const RunConfig& cfg, const RunContext& ctx);

struct ConvergeLevel {
  int level = 0;
  int nodes = 0;
  ErrorReport physical;  // r <= R against the exact solution
  ErrorReport whole;     // whole domain against its stretched continuation
  SolveReport solve;
};

struct ConvergeResult {
  std::vector<ConvergeLevel> levels;
  std::optional<double> slope_L2;
  std::optional<double> slope_H1;
  std::vector<std::string> warnings;
};

struct VariantResult {
  std::string name;
  int nodes = 0;
  std::map<Region, double> fractions;
  double band_fraction = 0.0;  // axon radius <= r <= myelin outer radius
  SolveReport solve;
};

struct SimulateResult {
  std::vector<VariantResult> variants;
};

struct CompareRow {
  double chi0 = 0.0;
  double bound = 0.0;
  double discrepancy_U = 0.0;  // ||u_DtN - u_PML|| over r <= R
  double discrepancy_V = 0.0;
};

struct DtnModesRow {
  int modes = 0;
  double change_U = 0.0;  // against the largest M of the sweep
};

struct CompareResult {
  double kappa = 0.0;
  int dtn_modes = 0;
  CompareRow main;
  std::vector<CompareRow> sweep;
  std::vector<DtnModesRow> modes_sweep;
  double dtn_error_U = 0.0;  // against the exact mode
  double pml_error_U = 0.0;
  int physical_nodes = 0;
};

struct AdviseRow {
  double chi0 = 0.0;
  double d = 0.0;
  double bound = 0.0;
  bool admissible = false;
};

struct AdviseResult {
  double kappa = 0.0;
  double suggested_chi0 = 0.0;
  double suggested_bound = 0.0;
  std::vector<AdviseRow> table;
};

ConvergeResult run_converge(const RunConfig& cfg, const RunContext& ctx);
SimulateResult run_simulate(const RunConfig& cfg, const RunContext& ctx);
CompareResult run_compare(const RunConfig& cfg, const RunContext& ctx);
AdviseResult run_advise(const RunConfig& cfg, const RunContext& ctx);

/// Dispatches on cfg.workflow.
void run_workflow(const RunConfig& cfg, const RunContext& ctx);

/// Worker count for independent variants, from AXONPML_WORKERS (default 1).
int worker_count();

}  // namespace axonpml
