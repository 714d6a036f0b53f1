#include "ese/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ese/error.hpp"

namespace ese {

InitialData InitialData::constant(double level) {
  InitialData d;
  d.kind = Kind::constant;
  d.level = level;
  return d;
}

InitialData InitialData::gaussian(double amplitude, double width, Point center) {
  InitialData d;
  d.kind = Kind::gaussian;
  d.amplitude = amplitude;
  d.width = width;
  d.center = center;
  return d;
}

InitialData InitialData::tabulated(std::vector<double> values) {
  InitialData d;
  d.kind = Kind::tabulated;
  d.table = std::move(values);
  return d;
}

namespace {

double gaussian_value(const InitialData& d, const Point& x, int dim) {
  double r2 = 0.0;
  for (int k = 0; k < dim; ++k) r2 += (x[k] - d.center[k]) * (x[k] - d.center[k]);
  return d.amplitude * std::exp(-r2 / (2.0 * d.width * d.width));
}

}  // namespace

Field initial_field(const InitialData& data, const Grid& grid) {
  switch (data.kind) {
    case InitialData::Kind::constant:
      return Field(grid, data.level);
    case InitialData::Kind::gaussian:
      return Field::sample(grid, [&](const Point& x) { return gaussian_value(data, x, grid.dim()); });
    case InitialData::Kind::tabulated:
      return Field(grid, data.table);
  }
  throw Error(ErrorKind::invalid_argument, "unknown initial data kind");
}

double boundary_decay_ratio(const InitialData& data, const Grid& grid) {
  if (data.kind == InitialData::Kind::constant) return 1.0;
  const Field f = initial_field(data, grid);
  double face = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = grid.multi_index(i);
    bool on_face = false;
    for (int k = 0; k < grid.dim(); ++k) on_face = on_face || idx[k] == 0 || idx[k] + 1 == grid.extent(k);
    if (on_face) face = std::max(face, f[i]);
  }
  double peak = f.max();
  if (data.kind == InitialData::Kind::gaussian) peak = std::max(peak, data.amplitude);
  return face / peak;
}

void ProblemSpec::validate() const {
  if (!(p > 1.0)) throw Error(ErrorKind::invalid_argument, "reaction exponent p must be > 1");
  if (!(t_end > 0.0)) throw Error(ErrorKind::invalid_argument, "t_end must be > 0");
  if (initial.kind == InitialData::Kind::gaussian && !(initial.width > 0.0))
    throw Error(ErrorKind::invalid_argument, "gaussian width must be > 0");
  require_positive(initial_field(initial, grid), "initial data");
}

void StepConfig::validate() const {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw Error(ErrorKind::invalid_argument, "cfl_safety must lie in (0, 1]");
  if (!(reaction_safety > 0.0 && reaction_safety <= 1.0))
    throw Error(ErrorKind::invalid_argument, "reaction_safety must lie in (0, 1]");
  if (!(dt_min > 0.0)) throw Error(ErrorKind::invalid_argument, "dt_min must be > 0");
  if (!(f_cap > 0.0)) throw Error(ErrorKind::invalid_argument, "f_cap must be > 0");
  if (sample_stride == 0) throw Error(ErrorKind::invalid_argument, "sample_stride must be >= 1");
  if (max_steps == 0) throw Error(ErrorKind::invalid_argument, "max_steps must be >= 1");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::blowup: return "blowup";
    case Termination::aborted: return "aborted";
  }
  return "unknown";
}

namespace {

inline double power(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  return std::pow(x, p);
}

// Scratch buffers for one RK4 step on a fixed grid.
class Rk4 {
 public:
  Rk4(const Grid& grid, double p, bool reaction)
      : grid_(grid), p_(p), reaction_(reaction), k1_(grid.size()), k2_(grid.size()), k3_(grid.size()),
        k4_(grid.size()), stage_(grid.size()) {}

  // Advances `f` in place.
  void advance(std::vector<double>& f, double dt) {
    const std::size_t n = f.size();
    rhs(f, k1_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = f[i] + 0.5 * dt * k1_[i];
    check(stage_, "RK4 stage 2");
    rhs(stage_, k2_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = f[i] + 0.5 * dt * k2_[i];
    check(stage_, "RK4 stage 3");
    rhs(stage_, k3_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = f[i] + dt * k3_[i];
    check(stage_, "RK4 stage 4");
    rhs(stage_, k4_);
    for (std::size_t i = 0; i < n; ++i) f[i] += dt / 6.0 * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
    check(f, "RK4 result");
  }

 private:
  void rhs(const std::vector<double>& in, std::vector<double>& out) const {
    apply_laplacian(grid_, in, out);
    if (reaction_)
      for (std::size_t i = 0; i < in.size(); ++i) out[i] += power(in[i], p_);
  }

  static void check(const std::vector<double>& v, const char* where) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0)) {
        std::ostringstream msg;
        msg << where << ": value " << v[i] << " at grid index " << i;
        throw Error(ErrorKind::non_positive_field, msg.str());
      }
    }
  }

  const Grid& grid_;
  double p_;
  bool reaction_;
  std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

}  // namespace

double stable_dt(const Grid& grid, double f_max, double p, const StepConfig& cfg, bool reaction) {
  const double h = grid.min_spacing();
  double dt = cfg.cfl_safety * h * h / (2.0 * grid.dim());
  if (reaction) dt = std::min(dt, cfg.reaction_safety / (p * std::pow(f_max, p - 1.0)));
  return dt;
}

Field step(const Field& f, double /*t*/, double dt, double p, bool reaction) {
  if (dt < 0.0) throw Error(ErrorKind::invalid_argument, "dt must be >= 0");
  require_positive(f, "step input");
  if (dt == 0.0) return f;
  std::vector<double> values(f.values().begin(), f.values().end());
  Rk4 rk(f.grid(), p, reaction);
  rk.advance(values, dt);
  return Field(f.grid(), std::move(values));
}

SolveTrace solve(const ProblemSpec& problem, const StepConfig& cfg) {
  problem.validate();
  cfg.validate();

  const Grid& grid = problem.grid;
  Field f0 = initial_field(problem.initial, grid);
  if (!(cfg.f_cap > f0.max())) throw Error(ErrorKind::invalid_argument, "f_cap must exceed the initial maximum");

  SolveTrace trace;
  std::vector<double> f(f0.values().begin(), f0.values().end());
  trace.samples.push_back({0.0, std::move(f0)});

  Rk4 rk(grid, problem.p, problem.reaction);
  double t = 0.0;
  double prev_max = -std::numeric_limits<double>::infinity();
  std::size_t steps = 0;
  bool sampled_last = true;

  auto sample_now = [&] {
    trace.samples.push_back({t, Field(grid, f)});
    sampled_last = true;
  };

  for (;;) {
    const double f_max = *std::max_element(f.begin(), f.end());
    if (f_max > cfg.f_cap) {
      trace.status = {Termination::blowup, t, "f_cap"};
      break;
    }
    if (t >= problem.t_end) {
      trace.status = {Termination::reached_t_end, t, ""};
      break;
    }
    if (steps >= cfg.max_steps) {
      trace.status = {Termination::aborted, t, "max_steps exhausted"};
      break;
    }
    double dt = stable_dt(grid, f_max, problem.p, cfg, problem.reaction);
    if (dt < cfg.dt_min) {
      if (f_max > prev_max)
        trace.status = {Termination::blowup, t, "dt_min"};
      else
        trace.status = {Termination::aborted, t, "dt fell below dt_min without growth"};
      break;
    }
    bool last = false;
    if (t + dt >= problem.t_end * (1.0 - 1e-14)) {
      dt = problem.t_end - t;
      last = true;
    }
    try {
      rk.advance(f, dt);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << e.what() << " at t=" << t;
      trace.status = {Termination::aborted, t, msg.str()};
      break;
    }
    t = last ? problem.t_end : t + dt;
    ++steps;
    prev_max = f_max;
    trace.step_log.push_back(dt);
    sampled_last = false;
    if (steps % cfg.sample_stride == 0) sample_now();
  }
  if (!sampled_last && trace.status.kind != Termination::aborted) sample_now();
  return trace;
}

double RescaleSpec::value_factor() const { return std::pow(lambda, delta()); }

RescaledField rescale_field(const Field& f, double t, const RescaleSpec& spec) {
  if (!(spec.lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "rescale lambda must be > 0");
  const double factor = spec.value_factor();
  std::vector<double> values(f.values().begin(), f.values().end());
  for (double& v : values) v *= factor;
  return {Field(f.grid().scaled(spec.lambda), std::move(values)), spec.lambda * spec.lambda * t};
}

ProblemSpec rescale_problem(const ProblemSpec& problem, const RescaleSpec& spec) {
  if (!(spec.lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "rescale lambda must be > 0");
  ProblemSpec out = problem;
  const double factor = spec.value_factor();
  out.grid = problem.grid.scaled(spec.lambda);
  out.t_end = problem.t_end * spec.lambda * spec.lambda;
  switch (problem.initial.kind) {
    case InitialData::Kind::constant:
      out.initial.level *= factor;
      break;
    case InitialData::Kind::gaussian:
      out.initial.amplitude *= factor;
      out.initial.width *= spec.lambda;
      for (double& c : out.initial.center) c *= spec.lambda;
      break;
    case InitialData::Kind::tabulated:
      for (double& v : out.initial.table) v *= factor;
      break;
  }
  return out;
}

SolveTrace rescale_trace(const SolveTrace& trace, const RescaleSpec& spec) {
  SolveTrace out;
  out.status = trace.status;
  const double time_factor = spec.lambda * spec.lambda;
  out.status.t *= time_factor;
  out.samples.reserve(trace.samples.size());
  for (const auto& s : trace.samples) {
    auto r = rescale_field(s.f, s.t, spec);
    out.samples.push_back({r.t, std::move(r.f)});
  }
  out.step_log.reserve(trace.step_log.size());
  for (double dt : trace.step_log) out.step_log.push_back(dt * time_factor);
  return out;
}

}  // namespace ese
