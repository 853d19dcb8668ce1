#pragma once
#include <string>
#include <vector>

#include "ionsim/models.hpp"
#include "ionsim/propagation.hpp"

namespace ionsim {

// thrown by parse_config when --help is requested; carries the usage text
struct help_requested {
  std::string text;
};

struct ScenarioConfig {
  ModelParams params;
  FockDim dim;
  std::string init = "e0";
  std::vector<std::string> models;  // evaluation and CSV column order
  double tmax = 0.0;                // 0 -> default 100 / max(nu, omega)
  int samples = 2000;
  double step = 0.0;                // full_eq1 substep; 0 -> default 0.08 / norm bound
  std::string out;                  // CSV path; report goes to out + ".report.txt"
  std::string config_path;
};

// parse command-line style arguments (program name excluded); --config pulls
// the same keys from a flat key=value file, with explicit flags winning
ScenarioConfig parse_config(const std::vector<std::string>& args);

struct ComparisonReport {
  std::string model_a;
  std::string model_b;
  double sup_norm = 0.0;
  double rms = 0.0;
  double t_at_max_diff = 0.0;
};

// pointwise difference statistics; the grids must match exactly
ComparisonReport compare(const TimeSeries& a, const TimeSeries& b);

struct ScenarioResult {
  std::vector<TimeSeries> series;
  std::vector<ComparisonReport> comparisons;
  ConvergenceReport convergence;
  bool convergence_ran = false;
  std::vector<std::string> warnings;
};

// evaluate every requested model on the shared grid (truncation convergence
// check first when the exact model is included), compare all pairs, and write
// the CSV plus the key=value report unless cfg.out is empty
ScenarioResult run_scenario(const ScenarioConfig& cfg);

void write_csv(const std::string& path, const std::vector<TimeSeries>& series);
void write_report(const std::string& path, const ScenarioConfig& cfg, const ScenarioResult& r);

}  // namespace ionsim
