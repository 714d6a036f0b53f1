#pragma once

#include <string_view>
#include <vector>

#include "ese/constants.hpp"
#include "ese/field.hpp"
#include "ese/integrate.hpp"

namespace ese {

/// Cutoff φ_R = a/t + Σ_k b/(x_k - lo_k)² + b/(hi_k - x_k)² on a rectangle,
/// +∞ outside it. Build through make_localizer to enforce the bound on b.
struct LocalizerSpec {
  std::vector<Interval> rect;
  double a = 1.0;
  double b = 1.0;
};

/// Least b for which the cutoff argument closes:
/// (nα²/(2(α-β))) (6 + nα²/((α-β)β)). Throws BetaZero for β = 0.
double localizer_b_min(int n, const HarnackConstants& k);

/// Throws InvalidArgument unless b > localizer_b_min and a ≥ a_min.
LocalizerSpec make_localizer(std::vector<Interval> rect, const HarnackConstants& k, double b);

/// α Δu + β |∇u|² + c e^{u(p-1)} + a/t. Throws NonPositiveTime for t ≤ 0.
Field harnack_h0(const Field& u, double t, const HarnackConstants& k, double p);

/// φ_R at (x, t); +∞ on or outside the rectangle boundary and for t ≤ 0.
double phi_r(const Point& x, double t, const LocalizerSpec& loc);

/// H0 with a/t replaced by φ_R using loc.a, and loc.b. Points not strictly
/// inside the rectangle carry +∞. Throws BetaZero when k.beta == 0.
Field harnack_hr(const Field& u, double t, const HarnackConstants& k, double p, const LocalizerSpec& loc);

struct TimeWindow {
  double t_min = 0.0;
  double t_max = 0.0;
};

/// [0.05 t_f, 0.9 t_f] for the trace's final time t_f. The a/t term makes
/// positivity trivial close to t = 0, so early times are excluded.
TimeWindow default_window(const SolveTrace& trace);

enum class Verdict { certified, consistent, violated };

std::string_view to_string(Verdict v);

struct CurvePoint {
  double t;
  double min_h;
};

struct HarnackReport {
  TimeWindow window;
  double min_h = 0.0;
  Point argmin_x{0.0, 0.0, 0.0};
  double argmin_t = 0.0;
  std::vector<CurvePoint> min_curve;
  double tolerance = 0.0;
  /// consistent iff min_h ≥ -tolerance at this one resolution.
  Verdict verdict = Verdict::violated;
};

/// Minimum of H0 over grid points and the samples inside `window`.
HarnackReport scan_h0(const SolveTrace& trace, const HarnackConstants& k, double p, TimeWindow window,
                      double tolerance);

/// Same scan for the localized quantity on grid points strictly inside loc.rect.
HarnackReport scan_hr(const SolveTrace& trace, const HarnackConstants& k, double p, const LocalizerSpec& loc,
                      TimeWindow window, double tolerance);

/// Two-resolution verdict: certified iff coarse.min_h ≥ -ε and
/// fine.min_h ≥ -ε/2 with ε = coarse.tolerance; consistent if both only
/// clear -ε; violated otherwise.
Verdict certify(const HarnackReport& coarse, const HarnackReport& fine);

struct ResidualStats {
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double max_abs_ht = 0.0;
  std::size_t samples_used = 0;
};

/// Compares H_t (three-point difference over consecutive samples) with the
/// right side of the evolution identity for H, taking φ = a/t. Residuals are
/// normalized by max |H_t| over the window. Throws WindowTooSmall when
/// fewer than three samples fall in the window.
ResidualStats evolution_residual(const SolveTrace& trace, const HarnackConstants& k, double p, TimeWindow window);

/// Coefficients of f_t + A f/t ≥ B |∇f|²/f + C f^p obtained from H0 ≥ 0.
struct FFormCoefficients {
  double time_coeff;
  double grad_coeff;
  double reaction_coeff;
};

FFormCoefficients f_form(const HarnackConstants& k, double p);

}  // namespace ese
