#include "ese/pathharnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ese/error.hpp"

namespace ese {

namespace {

double dist_sq(const Point& a, const Point& b) {
  double s = 0.0;
  for (int k = 0; k < max_dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

void require_times(double t1, double t2) {
  if (!(t1 > 0.0 && t2 > t1)) {
    std::ostringstream msg;
    msg << "path times must satisfy 0 < t1 < t2, got " << t1 << ", " << t2;
    throw Error(ErrorKind::non_monotone_time, msg.str());
  }
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double path_cost(const PathSpec& path, int n) {
  std::vector<SpaceTimePoint> vertices;
  vertices.reserve(path.waypoints.size() + 2);
  vertices.push_back(path.start);
  vertices.insert(vertices.end(), path.waypoints.begin(), path.waypoints.end());
  vertices.push_back(path.end);

  double kinetic = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    require_times(vertices[i - 1].t, vertices[i].t);
    kinetic += dist_sq(vertices[i].x, vertices[i - 1].x) / (2.0 * (vertices[i].t - vertices[i - 1].t));
  }
  return kinetic + n * std::log(path.end.t / path.start.t);
}

double min_path_cost(const SpaceTimePoint& from, const SpaceTimePoint& to, int n) {
  require_times(from.t, to.t);
  return dist_sq(to.x, from.x) / (2.0 * (to.t - from.t)) + n * std::log(to.t / from.t);
}

double lattice_min_path_cost(const SpaceTimePoint& from, const SpaceTimePoint& to, int n, int time_slices,
                             int space_points) {
  require_times(from.t, to.t);
  if (time_slices < 2 || space_points < 2) throw Error(ErrorKind::invalid_argument, "lattice needs >= 2 slices and points");

  // Lattice positions s along x1 + s e. With distinct endpoints the positions
  // span [0, L]; otherwise they straddle s = 0.
  const double length = std::sqrt(dist_sq(to.x, from.x));
  std::vector<double> s(space_points);
  std::size_t start = 0, goal = static_cast<std::size_t>(space_points - 1);
  if (length > 0.0) {
    for (int j = 0; j < space_points; ++j) s[j] = length * j / (space_points - 1);
  } else {
    const double w = 0.1 * std::sqrt(to.t - from.t);
    const int mid = (space_points - 1) / 2;
    for (int j = 0; j < space_points; ++j) s[j] = (j - mid) * w;
    start = goal = static_cast<std::size_t>(mid);
  }

  std::vector<double> t(time_slices);
  for (int k = 0; k < time_slices; ++k) t[k] = from.t + (to.t - from.t) * k / (time_slices - 1);

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(space_points, inf), next(space_points);
  cost[start] = 0.0;
  for (int k = 1; k < time_slices; ++k) {
    const double dt = t[k] - t[k - 1];
    const double potential = n * std::log(t[k] / t[k - 1]);
    const bool last = k == time_slices - 1;
    for (int j = 0; j < space_points; ++j) {
      next[j] = inf;
      if (last && static_cast<std::size_t>(j) != goal) continue;
      for (int i = 0; i < space_points; ++i) {
        if (cost[i] == inf) continue;
        const double ds = s[j] - s[i];
        next[j] = std::min(next[j], cost[i] + ds * ds / (2.0 * dt) + potential);
      }
    }
    std::swap(cost, next);
  }
  return cost[goal];
}

double trace_value(const SolveTrace& trace, const SpaceTimePoint& at) {
  const auto& samples = trace.samples;
  if (samples.empty() || at.t < samples.front().t || at.t > samples.back().t) {
    std::ostringstream msg;
    msg << "t = " << at.t << " outside the sampled window";
    throw Error(ErrorKind::out_of_window, msg.str());
  }
  auto hi = std::lower_bound(samples.begin(), samples.end(), at.t, [](const Sample& s, double t) { return s.t < t; });
  if (hi->t == at.t || hi == samples.begin()) return hi->f.interpolate(at.x);
  auto lo = std::prev(hi);
  const double w = (at.t - lo->t) / (hi->t - lo->t);
  return (1.0 - w) * lo->f.interpolate(at.x) + w * hi->f.interpolate(at.x);
}

std::vector<PairVerdict> classical_harnack_check(const SolveTrace& trace, std::span<const EndpointPair> pairs, int n,
                                                 double tolerance) {
  std::vector<PairVerdict> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    const auto& [p1, p2] = pair;
    require_times(p1.t, p2.t);
    PairVerdict v;
    v.pair = pair;
    v.lhs = trace_value(trace, p1);
    v.rhs = trace_value(trace, p2) * std::pow(p2.t / p1.t, n) * std::exp(dist_sq(p2.x, p1.x) / (2.0 * (p2.t - p1.t)));
    v.slack = v.rhs / v.lhs;
    v.pass = v.slack >= 1.0 - tolerance;
    out.push_back(v);
  }
  return out;
}

std::vector<EndpointPair> random_pairs(const Grid& grid, TimeWindow window, std::size_t count, std::uint64_t seed) {
  if (!(window.t_min > 0.0 && window.t_max > window.t_min))
    throw Error(ErrorKind::invalid_argument, "pair window must satisfy 0 < t_min < t_max");
  std::mt19937_64 rng(seed);
  auto draw_point = [&] {
    Point x{0.0, 0.0, 0.0};
    for (int k = 0; k < grid.dim(); ++k) {
      const auto& iv = grid.interval(k);
      x[k] = iv.lo + unit_uniform(rng) * iv.length();
    }
    return x;
  };
  std::vector<EndpointPair> out;
  out.reserve(count);
  while (out.size() < count) {
    double t1 = window.t_min + unit_uniform(rng) * (window.t_max - window.t_min);
    double t2 = window.t_min + unit_uniform(rng) * (window.t_max - window.t_min);
    if (t1 == t2) continue;
    if (t1 > t2) std::swap(t1, t2);
    EndpointPair pair;
    pair.first = {draw_point(), t1};
    pair.second = {draw_point(), t2};
    out.push_back(pair);
  }
  return out;
}

}  // namespace ese
