#include <doctest.h>

#include <cmath>

#include "ese/integrate.hpp"
#include "oracles.hpp"

using namespace ese;

namespace {

ProblemSpec constant_problem(double level, double t_end) {
  ProblemSpec prob;
  prob.p = 2.0;
  prob.grid = Grid::cube(1, 32, {0.0, oracle::two_pi}, Boundary::periodic);
  prob.initial = InitialData::constant(level);
  prob.t_end = t_end;
  return prob;
}

ProblemSpec gaussian_problem(double amplitude, double t_end, std::size_t points = 128) {
  ProblemSpec prob;
  prob.p = 2.0;
  prob.grid = Grid::cube(1, points, {-4.0, 4.0}, Boundary::periodic);
  prob.initial = InitialData::gaussian(amplitude, 0.2);
  prob.t_end = t_end;
  return prob;
}

}  // namespace

TEST_CASE("one RK4 step on constant data matches the ODE to fifth order") {
  const Grid g = Grid::cube(1, 16, {0.0, 1.0}, Boundary::periodic);
  const double dt = 1e-4;
  const Field f = step(Field(g, 1.0), 0.0, dt, 2.0);
  const double exact = oracle::ode(1.0, 2.0, dt);
  CHECK(std::abs(f.max() - exact) < 1e-15);
  CHECK(std::abs(f.min() - exact) < 1e-15);

  // Local error of RK4 behaves like dt^5: halving dt divides it by ~32.
  const double big = 0.05;
  const double e1 = std::abs(step(Field(g, 1.0), 0.0, big, 2.0)[0] - oracle::ode(1.0, 2.0, big));
  const double e2 = std::abs(step(Field(g, 1.0), 0.0, big / 2, 2.0)[0] - oracle::ode(1.0, 2.0, big / 2));
  CHECK(oracle::observed_order(e1, e2) > 4.5);
}

TEST_CASE("zero step leaves the field unchanged") {
  const Grid g = Grid::cube(1, 16, {0.0, 1.0}, Boundary::periodic);
  const Field f = Field::sample(g, [](const Point& x) { return 1.0 + 0.5 * std::sin(oracle::two_pi * x[0]); });
  const Field same = step(f, 0.3, 0.0, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(same[i] == f[i]);
}

TEST_CASE("reaction adds mass relative to the pure heat step") {
  const auto prob = gaussian_problem(1.0, 1.0);
  const Field f0 = initial_field(prob.initial, prob.grid);
  const double dt = stable_dt(prob.grid, f0.max(), 2.0, StepConfig{});
  const Field with = step(f0, 0.0, dt, 2.0, true);
  const Field heat = step(f0, 0.0, dt, 2.0, false);
  CHECK(with.max() < f0.max());
  CHECK(with.max() > heat.max());
  for (std::size_t i = 0; i < f0.size(); ++i) CHECK(with[i] >= heat[i]);
}

TEST_CASE("step fails rather than clipping a nonpositive stage") {
  const Grid g = Grid::cube(1, 8, {0.0, 1.0}, Boundary::periodic);
  std::vector<double> v(8, 1e-3);
  v[3] = 1.0;
  // dt far beyond the diffusive limit drives neighbours negative.
  CHECK(throws_kind(ErrorKind::non_positive_field, [&] { step(Field(g, v), 0.0, 1.0, 2.0); }));
}

TEST_CASE("stable_dt takes the smaller of the two limits") {
  const Grid g = Grid::cube(1, 64, {0.0, 6.4}, Boundary::periodic);
  StepConfig cfg;
  const double h = 0.1;
  CHECK(stable_dt(g, 1e-6, 2.0, cfg) == doctest::Approx(cfg.cfl_safety * h * h / 2.0));
  CHECK(stable_dt(g, 1e3, 2.0, cfg) == doctest::Approx(cfg.reaction_safety / (2.0 * 1e3)));
  CHECK(stable_dt(g, 1e3, 2.0, cfg, false) == doctest::Approx(cfg.cfl_safety * h * h / 2.0));
}

TEST_CASE("constant data follows the ODE up to 0.9 T*") {
  const auto trace = solve(constant_problem(1.0, 0.9), StepConfig{});
  REQUIRE(trace.status.kind == Termination::reached_t_end);
  CHECK(trace.final_time() == doctest::Approx(0.9).epsilon(1e-14));
  double worst = 0.0;
  for (const auto& s : trace.samples) {
    const double exact = oracle::ode(1.0, 2.0, s.t);
    worst = std::max(worst, std::abs(s.f.max() - exact) / exact);
    worst = std::max(worst, std::abs(s.f.min() - exact) / exact);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("constant data blows up at T*") {
  for (double level : {1.0, 0.5}) {
    const auto trace = solve(constant_problem(level, 10.0), StepConfig{});
    REQUIRE(trace.blew_up());
    CHECK(trace.status.detail == "f_cap");
    const double tstar = oracle::ode_blowup(level, 2.0);
    CHECK(trace.status.t == doctest::Approx(tstar).epsilon(1e-3));
  }
}

TEST_CASE("detection time approaches T* as the cap grows") {
  StepConfig low, high;
  low.f_cap = 1e4;
  high.f_cap = 1e8;
  const double t_low = solve(constant_problem(1.0, 2.0), low).status.t;
  const double t_high = solve(constant_problem(1.0, 2.0), high).status.t;
  CHECK(std::abs(1.0 - t_high) < std::abs(1.0 - t_low));
}

TEST_CASE("small Gaussian reaches t_end with a positive field") {
  StepConfig cfg;
  cfg.sample_stride = 10;
  const auto trace = solve(gaussian_problem(0.1, 0.5), cfg);
  CHECK(trace.status.kind == Termination::reached_t_end);
  CHECK(trace.final_time() == doctest::Approx(0.5).epsilon(1e-14));
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    CHECK(trace.samples[k].f.min() > 0.0);
    if (k) CHECK(trace.samples[k].t > trace.samples[k - 1].t);
  }
  CHECK(trace.step_log.size() >= trace.samples.size() - 1);
}

TEST_CASE("comparison principle on nested Gaussians") {
  StepConfig cfg;
  cfg.sample_stride = 5;
  const auto lo = solve(gaussian_problem(0.8, 0.5, 64), cfg);
  const auto hi = solve(gaussian_problem(1.0, 0.5, 64), cfg);
  // Same grid and CFL-limited dt at these levels, so sample times align.
  REQUIRE(lo.samples.size() == hi.samples.size());
  for (std::size_t k = 0; k < lo.samples.size(); ++k) {
    REQUIRE(lo.samples[k].t == doctest::Approx(hi.samples[k].t));
    for (std::size_t i = 0; i < lo.samples[k].f.size(); ++i) CHECK(lo.samples[k].f[i] <= hi.samples[k].f[i]);
  }
}

TEST_CASE("max_steps exhausts into an aborted status") {
  StepConfig cfg;
  cfg.max_steps = 3;
  const auto trace = solve(gaussian_problem(1.0, 1.0), cfg);
  CHECK(trace.status.kind == Termination::aborted);
  CHECK(trace.step_log.size() == 3);
}

TEST_CASE("validation") {
  auto prob = constant_problem(1.0, 1.0);
  prob.p = 1.0;
  CHECK(throws_kind(ErrorKind::invalid_argument, [&] { solve(prob, StepConfig{}); }));
  prob = constant_problem(-1.0, 1.0);
  CHECK_THROWS_AS(solve(prob, StepConfig{}), Error);
  StepConfig cfg;
  cfg.f_cap = 0.5;
  CHECK(throws_kind(ErrorKind::invalid_argument, [&] { solve(constant_problem(1.0, 1.0), cfg); }));
  cfg = StepConfig{};
  cfg.cfl_safety = 1.5;
  CHECK(throws_kind(ErrorKind::invalid_argument, [&] { solve(constant_problem(1.0, 1.0), cfg); }));
}

TEST_CASE("rescale_field") {
  const Grid g = Grid::cube(1, 8, {-1.0, 1.0}, Boundary::periodic);
  const Field f(g, 4.0);

  const auto id = rescale_field(f, 0.25, {1.0, 2.0});
  CHECK(id.t == 0.25);
  CHECK(id.f.grid() == g);
  CHECK(id.f.max() == 4.0);

  const RescaleSpec spec{2.0, 2.0};
  CHECK(spec.delta() == -2.0);
  const auto r = rescale_field(f, 0.25, spec);
  CHECK(r.t == doctest::Approx(1.0));
  CHECK(r.f.max() == doctest::Approx(1.0));
  CHECK(r.f.grid().interval(0).lo == doctest::Approx(-2.0));
  CHECK(r.f.grid().interval(0).hi == doctest::Approx(2.0));
}

TEST_CASE("solve then rescale equals rescale then solve") {
  StepConfig cfg;
  cfg.sample_stride = 4;
  const auto prob = gaussian_problem(1.0, 0.3, 64);
  const RescaleSpec spec{2.0, 2.0};
  const auto mapped = rescale_trace(solve(prob, cfg), spec);
  const auto direct = solve(rescale_problem(prob, spec), cfg);
  REQUIRE(mapped.samples.size() == direct.samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < mapped.samples.size(); ++k) {
    CHECK(mapped.samples[k].t == doctest::Approx(direct.samples[k].t).epsilon(1e-12));
    for (std::size_t i = 0; i < mapped.samples[k].f.size(); ++i)
      worst = std::max(worst, std::abs(mapped.samples[k].f[i] - direct.samples[k].f[i]) / direct.samples[k].f[i]);
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("boundary decay ratio of a truncated Gaussian") {
  const Grid g = Grid::cube(1, 256, {-4.0, 4.0}, Boundary::periodic);
  const double ratio = boundary_decay_ratio(InitialData::gaussian(1.0, 0.2), g);
  CHECK(ratio == doctest::Approx(std::exp(-16.0 / 0.08)).epsilon(1e-6));
  CHECK(ratio < 1e-12);
  CHECK(boundary_decay_ratio(InitialData::constant(2.0), g) == 1.0);
}
