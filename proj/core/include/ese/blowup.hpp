#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ese/field.hpp"
#include "ese/integrate.hpp"

namespace ese {

/// Position of n(p-1) relative to the Fujita value 2.
enum class Regime { subcritical, critical, supercritical };

std::string_view to_string(Regime r);

Regime classify_regime(int n, double p);

/// (4n/(2-c))^{1/(p-1)}: a solution that reaches this value at unit time
/// blows up. Throws InvalidC unless n(p-1) ≤ c < 2.
double blowup_threshold(int n, double p, double c);

/// Exact solution of f' = f^p: (f0^{1-p} - (p-1)t)^{-1/(p-1)}. Throws
/// PastBlowup when t ≥ T*.
double ode_oracle(double f0, double p, double t);

/// T* = f0^{1-p} / (p-1).
double ode_blowup_time(double f0, double p);

struct BlowupEstimate {
  double t_estimate = 0.0;
  /// max |g - fit| / (max g - min g) over the fitted samples.
  double fit_residual = 0.0;
  std::size_t samples_used = 0;
};

/// Least-squares line through g(t) = (max_x f)^{1-p} over the last `tail`
/// samples, extrapolated to its root. Throws NotBlowup if the trace did not
/// blow up and InsufficientSamples if fewer than 3 samples are available.
BlowupEstimate estimate_blowup_time(const SolveTrace& trace, double p, std::size_t tail = 8);

/// True iff max_x f is nondecreasing over the samples with t ≥ t0. Throws
/// ThresholdNeverMet unless the first such sample reaches `threshold`.
bool center_monotonicity_check(const SolveTrace& trace, double threshold, double t0);

struct ThresholdHit {
  Point x{0.0, 0.0, 0.0};
  double t = 0.0;
  double value = 0.0;
};

/// First sample at which t^{1/(p-1)} max_x f reaches `threshold`, i.e. where
/// the solution rescaled to unit time meets the blowup threshold.
std::optional<ThresholdHit> normalized_threshold_hit(const SolveTrace& trace, double p, double threshold);

/// Rescales the trace by λ = t0^{-1/2} so the time t0 becomes 1.
SolveTrace normalize_to_unit_time(const SolveTrace& trace, double p, double t0);

struct BlowupReport {
  Regime regime = Regime::subcritical;
  std::optional<double> threshold_value;
  std::optional<ThresholdHit> threshold_met_at;
  bool detected = false;
  std::optional<double> t_estimate;
  std::optional<double> fit_residual;
  std::string method;
};

/// Regime, threshold (when c is valid for (n, p)), and blowup estimate.
BlowupReport analyze_blowup(const SolveTrace& trace, int n, double p, double c);

}  // namespace ese
