#include "ese/constants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ese/error.hpp"

namespace ese {

namespace {

void require_np(int n, double p) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "dimension n must be >= 1");
  if (!(p > 1.0)) throw Error(ErrorKind::invalid_argument, "reaction exponent p must be > 1");
}

double closed_tolerance(double bound) { return 1e-12 * std::max(1.0, std::abs(bound)); }

void add(AdmissibilityVerdict& v, std::string_view name, double slack, bool satisfied) {
  Constraint c{std::string(name), slack, satisfied};
  v.checked.push_back(c);
  if (!satisfied) v.violated.push_back(c);
}

void add_closed(AdmissibilityVerdict& v, std::string_view name, double slack, double bound) {
  add(v, name, slack, slack >= -closed_tolerance(bound));
}

}  // namespace

AdmissibilityVerdict check_admissible(int n, double p, const HarnackConstants& k) {
  require_np(n, p);
  AdmissibilityVerdict v;
  v.n = n;
  v.p = p;
  const double gap = k.alpha - k.beta;
  add(v, kAlphaGtBeta, gap, gap > 0.0);
  add(v, kBetaNonneg, k.beta, k.beta >= 0.0);

  const double c_hi = (k.alpha * (p - 1.0) + 2.0 * k.beta) / p;
  add_closed(v, kCUpper, c_hi - k.c, c_hi);
  if (gap > 0.0) {
    const double c_lo = (p - 1.0) * n * k.alpha * k.alpha / (4.0 * gap);
    const double a_min = n * k.alpha * k.alpha / (2.0 * gap);
    add_closed(v, kCLower, k.c - c_lo, c_lo);
    add_closed(v, kALower, k.a - a_min, a_min);
  }
  return v;
}

AdmissibilityVerdict check_path_hypotheses(int n, double p, const HarnackConstants& k) {
  AdmissibilityVerdict v = check_admissible(n, p, k);
  add_closed(v, kAlphaGe2Beta, k.alpha - 2.0 * k.beta, 2.0 * k.beta);
  add_closed(v, kALeNAlpha, n * k.alpha - k.a, n * k.alpha);
  return v;
}

double feasibility_lhs(double p, double alpha, double beta) {
  return 4.0 * (alpha * (p - 1.0) + 2.0 * beta) * (alpha - beta) / (alpha * alpha);
}

FeasibleRegion feasible_region(int n, double p, double alpha, double beta) {
  require_np(n, p);
  if (!(alpha > beta && beta >= 0.0)) throw Error(ErrorKind::invalid_argument, "feasible_region needs alpha > beta >= 0");
  FeasibleRegion r;
  const double gap = alpha - beta;
  r.c_lo = (p - 1.0) * n * alpha * alpha / (4.0 * gap);
  r.c_hi = (alpha * (p - 1.0) + 2.0 * beta) / p;
  r.a_min = n * alpha * alpha / (2.0 * gap);
  r.feasible = feasibility_lhs(p, alpha, beta) >= p * (p - 1.0) * n;
  return r;
}

namespace {

// Golden-section search for the maximum of a unimodal function on [lo, hi].
template <class Fn>
double golden_section_max(Fn&& fn, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = fn(x1), f2 = fn(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = fn(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = fn(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FeasibilityOptimum best_feasibility(int n, double p) {
  require_np(n, p);
  auto objective = [p](double s) { return 4.0 * ((p - 1.0) + 2.0 * s) * (1.0 - s); };
  constexpr double s_max = 1.0;
  double s = golden_section_max(objective, 0.0, s_max, 1e-10);

  // Near a smooth maximum, f(s ± δ) agrees with f(s) to round-off once δ is
  // below ~sqrt(eps), so bracket comparisons stall near 1e-8. One parabolic
  // step through well-separated points recovers the vertex.
  const double d = 1e-3;
  const double a = std::max(0.0, s - d), b = std::min(s_max, s + d), m = 0.5 * (a + b);
  const double fa = objective(a), fm = objective(m), fb = objective(b);
  const double denom = (m - a) * (fm - fb) - (m - b) * (fm - fa);
  if (denom != 0.0) {
    const double vertex = m - 0.5 * ((m - a) * (m - a) * (fm - fb) - (m - b) * (m - b) * (fm - fa)) / denom;
    if (vertex >= 0.0 && vertex < s_max && objective(vertex) >= objective(s)) s = vertex;
  }
  if (objective(0.0) >= objective(s)) s = 0.0;

  FeasibilityOptimum out;
  out.argmax_ratio = s;
  out.max_lhs = objective(s);
  out.n_limit = out.max_lhs / (p * (p - 1.0));
  out.feasible = n <= out.n_limit;
  return out;
}

namespace {

bool parse_number(std::string_view text, double& out) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return false;
  std::istringstream in{std::string(text)};
  in >> out;
  return in && in.peek() == std::char_traits<char>::eof();
}

}  // namespace

Preset preset(std::string_view name) {
  if (name == "hamilton_1d") return {"hamilton_1d", 1, 2.0, {1.0, 0.0, 0.5, 2.0 / 3.0}};
  if (name == "improved_1d") return {"improved_1d", 1, 2.0, {1.0, 0.0, 0.25, 0.5}};
  if (name == "dim2") return {"dim2", 2, 2.0, {1.0, 0.0, 0.5, 1.0}};

  constexpr std::string_view head = "blowup(";
  if (name.starts_with(head) && name.ends_with(")")) {
    std::string_view args = name.substr(head.size(), name.size() - head.size() - 1);
    std::vector<double> values;
    while (true) {
      const auto comma = args.find(',');
      double v = 0.0;
      if (!parse_number(args.substr(0, comma), v)) break;
      values.push_back(v);
      if (comma == std::string_view::npos) break;
      args.remove_prefix(comma + 1);
    }
    if (values.size() == 3 && values[0] >= 1.0 && std::floor(values[0]) == values[0]) {
      const int n = static_cast<int>(values[0]);
      return {std::string(name), n, values[1], {2.0, 1.0, values[2], 2.0 * n}};
    }
  }
  throw Error(ErrorKind::unknown_preset, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"hamilton_1d", "improved_1d", "dim2", "blowup(n,p,c)"}; }

}  // namespace ese
