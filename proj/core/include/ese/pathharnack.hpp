#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ese/field.hpp"
#include "ese/harnack.hpp"
#include "ese/integrate.hpp"

namespace ese {

struct SpaceTimePoint {
  Point x{0.0, 0.0, 0.0};
  double t = 0.0;
};

/// Space-time path t ↦ (x(t), t), piecewise linear through the waypoints.
struct PathSpec {
  SpaceTimePoint start;
  SpaceTimePoint end;
  std::vector<SpaceTimePoint> waypoints;
};

/// ∫ ½|ẋ|² + n/t dt along the path. The kinetic term is exact on each
/// linear piece; the n/t term is integrated in closed form. Throws
/// NonMonotoneTime unless the vertex times strictly increase from t1 > 0.
double path_cost(const PathSpec& path, int n);

/// Infimum over paths: |x2 - x1|² / (2(t2 - t1)) + n ln(t2/t1).
double min_path_cost(const SpaceTimePoint& from, const SpaceTimePoint& to, int n);

/// Brute-force oracle for min_path_cost: dynamic programming over paths
/// whose vertices sit on `time_slices` uniform times and `space_points`
/// positions along the line through the endpoints. The n/t term is
/// integrated exactly on each slice, so only the kinetic minimization is
/// discretized.
double lattice_min_path_cost(const SpaceTimePoint& from, const SpaceTimePoint& to, int n, int time_slices = 20,
                             int space_points = 20);

struct EndpointPair {
  SpaceTimePoint first;
  SpaceTimePoint second;
};

struct PairVerdict {
  EndpointPair pair;
  double lhs = 0.0;    // f(x1, t1)
  double rhs = 0.0;    // f(x2, t2) (t2/t1)^n exp(|x2-x1|²/(2(t2-t1)))
  double slack = 0.0;  // rhs / lhs
  bool pass = false;   // slack ≥ 1 - tolerance
};

/// Trace value at an arbitrary space-time point: multilinear in space,
/// linear in time. Throws OutOfWindow outside the sampled range.
double trace_value(const SolveTrace& trace, const SpaceTimePoint& at);

/// Checks the integrated Harnack inequality on each pair (t1 < t2).
std::vector<PairVerdict> classical_harnack_check(const SolveTrace& trace, std::span<const EndpointPair> pairs, int n,
                                                 double tolerance = 1e-3);

/// Uniform pairs with t_min ≤ t1 < t2 ≤ t_max and points in the grid box.
std::vector<EndpointPair> random_pairs(const Grid& grid, TimeWindow window, std::size_t count, std::uint64_t seed);

}  // namespace ese
