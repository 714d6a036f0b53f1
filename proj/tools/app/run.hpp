#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "ese/constants.hpp"
#include "ese/harnack.hpp"
#include "ese/integrate.hpp"
#include "ese/pathharnack.hpp"

namespace ese::app {

/// Process exit codes.
enum ExitCode : int { exit_ok = 0, exit_verdict = 1, exit_usage = 2, exit_abort = 3 };

enum class Check { h0, hr, residual, blowup, classical, rescale };

std::string_view to_string(Check c);

struct RunConfig {
  ProblemSpec problem;
  StepConfig step;

  std::string constants_label;
  HarnackConstants constants;

  std::set<Check> checks;
  double t_min_fraction = 0.05;
  double t_max_fraction = 0.9;
  double h0_tolerance = 1e-2;
  double residual_tolerance = 5e-2;
  double classical_tolerance = 1e-3;
  std::size_t classical_pairs = 100;
  std::optional<double> blowup_c;
  double localizer_margin = 0.1;
  double localizer_b_factor = 2.0;
  double rescale_lambda = 2.0;
  double rescale_tolerance = 1e-3;
  double rescale_time_tolerance = 2e-2;

  std::filesystem::path out_dir = "out";
  bool write_csv = true;
  bool write_json = true;

  std::uint64_t seed = 0;
  bool allow_inadmissible = false;
};

/// Reads and validates every section. Throws ConfigError (with the line of
/// the offending key) on parse or validation failure.
RunConfig parse_run_config(const Config& cfg);

/// Command-line overrides shared by solve/verify/sweep.
struct Overrides {
  std::optional<std::uint64_t> seed;
  bool allow_inadmissible = false;
  std::optional<std::filesystem::path> out_dir;
};

void apply(RunConfig& run, const Overrides& o);

struct RunResult {
  nlohmann::ordered_json summary;
  int exit_code = exit_ok;
};

/// Solves and writes <out>/trace/ plus <out>/solve.json.
RunResult run_solve(const RunConfig& run);

/// Executes the enabled checks on a stored trace (`trace_dir`) or an inline
/// solve, writing summary.json and the CSV reports into run.out_dir.
RunResult run_verify(const RunConfig& run, const std::optional<std::filesystem::path>& trace_dir = std::nullopt);

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

/// "section.key=v1,v2,...". Throws ConfigError on an empty axis.
SweepAxis parse_axis(const std::string& spec);

/// Runs run_verify on every point of the cartesian product of `axes`, up to
/// `jobs` points at a time, each in <out>/point_NNN. Writes sweep.csv and
/// sweep.json. Exit code is the largest over the points.
RunResult run_sweep(const Config& base, const std::vector<SweepAxis>& axes, const Overrides& o, unsigned jobs);

/// "lo:hi:count" or a comma-separated list.
std::vector<double> parse_grid_spec(const std::string& spec);

/// Feasibility map rows for every (α, β) with α > β ≥ 0. Throws ConfigError
/// when no cell satisfies α > β.
std::string region_csv(int n, double p, const std::vector<double>& alphas, const std::vector<double>& betas);

/// Human-readable catalogue of presets with admissibility and f-form.
std::string preset_table();

}  // namespace ese::app
