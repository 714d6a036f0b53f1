#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ese/field.hpp"

namespace ese {

/// Initial data descriptor: constant level, isotropic Gaussian
/// A * exp(-|x - x0|^2 / (2 w^2)), or values tabulated on the problem grid.
struct InitialData {
  enum class Kind { constant, gaussian, tabulated };

  Kind kind = Kind::constant;
  double level = 1.0;
  double amplitude = 1.0;
  double width = 1.0;
  Point center{0.0, 0.0, 0.0};
  std::vector<double> table;

  static InitialData constant(double level);
  static InitialData gaussian(double amplitude, double width, Point center = {0.0, 0.0, 0.0});
  static InitialData tabulated(std::vector<double> values);
};

Field initial_field(const InitialData& data, const Grid& grid);

/// Largest initial value on the box faces divided by the peak. The box is
/// wide enough for the truncated problem when this is below 1e-12.
double boundary_decay_ratio(const InitialData& data, const Grid& grid);

struct ProblemSpec {
  double p = 2.0;
  Grid grid = Grid::cube(1, 64, {0.0, 1.0}, Boundary::periodic);
  InitialData initial = InitialData::constant(1.0);
  double t_end = 1.0;
  /// Disable f^p to solve the pure heat equation on the same grid.
  bool reaction = true;

  int dim() const { return grid.dim(); }
  /// Throws InvalidArgument / NonPositiveField.
  void validate() const;
};

struct StepConfig {
  double cfl_safety = 0.9;
  double reaction_safety = 0.1;
  double dt_min = 1e-12;
  double f_cap = 1e8;
  std::size_t sample_stride = 1;
  std::size_t max_steps = 200'000'000;

  void validate() const;
};

enum class Termination { reached_t_end, blowup, aborted };

std::string_view to_string(Termination t);

struct SolveStatus {
  Termination kind = Termination::reached_t_end;
  /// Time at which the run stopped (t_detect for blowup).
  double t = 0.0;
  /// Detection criterion for blowup ("f_cap" or "dt_min"), reason for aborts.
  std::string detail;
};

struct Sample {
  double t;
  Field f;
};

struct SolveTrace {
  std::vector<Sample> samples;
  SolveStatus status;
  std::vector<double> step_log;

  double final_time() const { return samples.back().t; }
  const Grid& grid() const { return samples.front().f.grid(); }
  bool blew_up() const { return status.kind == Termination::blowup; }
};

/// Largest stable step: min(cfl * h^2 / (2n), reaction_safety / (p * max f^(p-1))).
double stable_dt(const Grid& grid, double f_max, double p, const StepConfig& cfg, bool reaction = true);

/// One classical RK4 step of f_t = Δf + f^p. Throws NonPositiveField if a
/// stage or the result leaves the positive cone.
Field step(const Field& f, double t, double dt, double p, bool reaction = true);

/// Integrates until t_end, declared blowup, or abort. Solver failures are
/// reported in the returned status rather than thrown; invalid input throws.
SolveTrace solve(const ProblemSpec& problem, const StepConfig& cfg);

/// Parabolic rescaling f~(λx, λ²t) = λ^δ f(x, t) with δ = -2/(p-1).
struct RescaleSpec {
  double lambda = 1.0;
  double p = 2.0;

  double delta() const { return -2.0 / (p - 1.0); }
  double value_factor() const;
};

struct RescaledField {
  Field f;
  double t;
};

RescaledField rescale_field(const Field& f, double t, const RescaleSpec& spec);
ProblemSpec rescale_problem(const ProblemSpec& problem, const RescaleSpec& spec);
SolveTrace rescale_trace(const SolveTrace& trace, const RescaleSpec& spec);

}  // namespace ese
