#pragma once

// Closed-form reference values, written independently of the library so
// that tests never compare the implementation against itself.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ese/error.hpp"

namespace oracle {

/// Solution of f' = f^p with f(0) = f0.
inline double ode(double f0, double p, double t) {
  return std::pow(std::pow(f0, 1.0 - p) - (p - 1.0) * t, -1.0 / (p - 1.0));
}

inline double ode_blowup(double f0, double p) { return std::pow(f0, 1.0 - p) / (p - 1.0); }

/// H0 of a spatially constant solution: every spatial derivative vanishes.
inline double h0_constant(double f, double p, double c, double a, double t) {
  return c * std::pow(f, p - 1.0) + a / t;
}

inline double c_lower(int n, double p, double alpha, double beta) {
  return (p - 1.0) * n * alpha * alpha / (4.0 * (alpha - beta));
}
inline double c_upper(double p, double alpha, double beta) { return (alpha * (p - 1.0) + 2.0 * beta) / p; }
inline double a_min(int n, double alpha, double beta) { return n * alpha * alpha / (2.0 * (alpha - beta)); }

/// Maximizer of the concave quadratic 4((p-1) + 2s)(1 - s) on [0, 1):
/// the derivative 4(3 - p - 4s) vanishes at s = (3 - p)/4.
inline double feasibility_argmax(double p) { return std::clamp((3.0 - p) / 4.0, 0.0, 1.0); }
inline double feasibility_value(double p, double s) { return 4.0 * ((p - 1.0) + 2.0 * s) * (1.0 - s); }

inline double path_infimum(double dx2, double t1, double t2, int n) {
  return dx2 / (2.0 * (t2 - t1)) + n * std::log(t2 / t1);
}

inline double observed_order(double coarse_error, double fine_error) { return std::log2(coarse_error / fine_error); }

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace oracle

/// Runs `fn` and reports whether it threw ese::Error of the given kind.
template <class Fn>
bool throws_kind(ese::ErrorKind kind, Fn&& fn) {
  try {
    fn();
  } catch (const ese::Error& e) {
    return e.kind() == kind;
  }
  return false;
}
