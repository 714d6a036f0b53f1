#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ese {

/// Coefficients of H0 = α Δu + β |∇u|² + c e^{u(p-1)} + a/t.
struct HarnackConstants {
  double alpha = 1.0;
  double beta = 0.0;
  double c = 0.5;
  double a = 1.0;

  HarnackConstants scaled(double s) const { return {s * alpha, s * beta, s * c, s * a}; }
  bool operator==(const HarnackConstants&) const = default;
};

/// One inequality and its signed distance to the bound (negative = violated).
struct Constraint {
  std::string name;
  double slack = 0.0;
  bool satisfied = true;
};

struct AdmissibilityVerdict {
  int n = 1;
  double p = 2.0;
  std::vector<Constraint> checked;
  std::vector<Constraint> violated;

  bool admissible() const { return violated.empty(); }
};

// Constraint names used in verdicts.
inline constexpr std::string_view kAlphaGtBeta = "alpha_gt_beta";
inline constexpr std::string_view kBetaNonneg = "beta_nonneg";
inline constexpr std::string_view kCUpper = "c_upper";
inline constexpr std::string_view kCLower = "c_lower";
inline constexpr std::string_view kALower = "a_lower";
inline constexpr std::string_view kAlphaGe2Beta = "alpha_ge_2beta";
inline constexpr std::string_view kALeNAlpha = "a_le_n_alpha";

/// Checks α > β ≥ 0, c_lo ≤ c ≤ c_hi and a ≥ a_min for the pair (n, p).
/// Closed bounds accept a slack of -1e-12 * max(1, |bound|) so that bounds
/// fed back as values are not rejected by round-off. The c_lower and a_lower
/// bounds divide by α - β and are skipped when α ≤ β.
AdmissibilityVerdict check_admissible(int n, double p, const HarnackConstants& k);

/// check_admissible plus the two extra assumptions needed to integrate the
/// estimate along paths: α ≥ 2β and a ≤ nα.
AdmissibilityVerdict check_path_hypotheses(int n, double p, const HarnackConstants& k);

struct FeasibleRegion {
  double c_lo = 0.0;
  double c_hi = 0.0;
  double a_min = 0.0;
  bool feasible = false;

  bool empty() const { return !feasible; }
};

/// 4(α(p-1) + 2β)(α - β) / α², the left side of the (n, p) feasibility test.
double feasibility_lhs(double p, double alpha, double beta);

/// Interval of admissible c and the least admissible a for fixed α > β ≥ 0.
/// `feasible` is the test feasibility_lhs >= p(p-1)n.
FeasibleRegion feasible_region(int n, double p, double alpha, double beta);

struct FeasibilityOptimum {
  double max_lhs = 0.0;
  double argmax_ratio = 0.0;  // s = β/α
  double n_limit = 0.0;       // largest real n the estimate reaches
  bool feasible = false;      // n <= n_limit
};

/// Maximizes 4((p-1) + 2s)(1 - s) over s ∈ [0, 1) by golden-section search.
FeasibilityOptimum best_feasibility(int n, double p);

struct Preset {
  std::string name;
  int n = 1;
  double p = 2.0;
  HarnackConstants constants;
};

/// hamilton_1d, improved_1d, dim2, or blowup(n,p,c). Throws UnknownPreset.
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace ese
