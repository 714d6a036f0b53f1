#include "run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "ese/blowup.hpp"
#include "ese/error.hpp"
#include "ese/trace_io.hpp"

namespace ese::app {

using json = nlohmann::ordered_json;

std::string_view to_string(Check c) {
  switch (c) {
    case Check::h0: return "h0";
    case Check::hr: return "hr";
    case Check::residual: return "residual";
    case Check::blowup: return "blowup";
    case Check::classical: return "classical";
    case Check::rescale: return "rescale";
  }
  return "unknown";
}

namespace {

Check check_from_string(const Config& cfg, const std::string& key, const std::string& name) {
  for (Check c : {Check::h0, Check::hr, Check::residual, Check::blowup, Check::classical, Check::rescale})
    if (name == to_string(c)) return c;
  cfg.fail(key, "unknown check '" + name + "' (expected h0, hr, residual, blowup, classical, rescale)");
}

void require(const Config& cfg, const std::string& key, bool ok, const std::string& what) {
  if (!ok) cfg.fail(key, what);
}

json to_json(const HarnackConstants& k) { return {{"alpha", k.alpha}, {"beta", k.beta}, {"c", k.c}, {"a", k.a}}; }

json to_json(const AdmissibilityVerdict& v) {
  json violated = json::array();
  for (const auto& c : v.violated) violated.push_back({{"name", c.name}, {"slack", c.slack}});
  return {{"admissible", v.admissible()}, {"violated", violated}};
}

std::string violated_list(const AdmissibilityVerdict& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.violated.size(); ++i)
    out << (i ? ", " : "") << v.violated[i].name << " (slack " << v.violated[i].slack << ")";
  return out.str();
}

std::string format_point(const Point& x, int dim) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (int k = 0; k < dim; ++k) out << (k ? ";" : "") << x[k];
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
}

}  // namespace

RunConfig parse_run_config(const Config& cfg) {
  RunConfig run;

  // [problem]
  auto& prob = run.problem;
  prob.p = cfg.get_double("problem.p");
  require(cfg, "problem.p", prob.p > 1.0, "reaction exponent p must be > 1");
  const long long dim = cfg.get_int("problem.dim", 1);
  require(cfg, "problem.dim", dim >= 1 && dim <= 3, "dim must be 1, 2 or 3");
  const long long points = cfg.get_int("problem.points", 128);
  require(cfg, "problem.points", points >= 4, "points must be >= 4");
  const double lo = cfg.get_double("problem.lo", -4.0);
  const double hi = cfg.get_double("problem.hi", 4.0);
  require(cfg, "problem.hi", hi > lo, "box needs hi > lo");
  Boundary boundary = Boundary::periodic;
  try {
    boundary = boundary_from_string(cfg.get_string("problem.boundary", "periodic"));
  } catch (const Error& e) {
    cfg.fail("problem.boundary", e.what());
  }
  prob.grid = Grid::cube(static_cast<int>(dim), static_cast<std::size_t>(points), {lo, hi}, boundary);
  prob.t_end = cfg.get_double("problem.t_end");
  require(cfg, "problem.t_end", prob.t_end > 0.0, "t_end must be > 0");
  prob.reaction = cfg.get_bool("problem.reaction", true);

  // [initial]
  const std::string kind = cfg.get_string("initial.kind", "gaussian");
  if (kind == "constant") {
    prob.initial = InitialData::constant(cfg.get_double("initial.level"));
    require(cfg, "initial.level", prob.initial.level > 0.0, "constant level must be > 0");
  } else if (kind == "gaussian") {
    Point center{0.0, 0.0, 0.0};
    if (cfg.has("initial.center")) {
      const auto c = cfg.get_doubles("initial.center");
      require(cfg, "initial.center", c.size() == static_cast<std::size_t>(dim), "center needs one value per axis");
      std::copy(c.begin(), c.end(), center.begin());
    }
    prob.initial = InitialData::gaussian(cfg.get_double("initial.amplitude", 1.0), cfg.get_double("initial.width", 0.2), center);
    require(cfg, "initial.amplitude", prob.initial.amplitude > 0.0, "amplitude must be > 0");
    require(cfg, "initial.width", prob.initial.width > 0.0, "width must be > 0");
  } else {
    cfg.fail("initial.kind", "expected 'constant' or 'gaussian', got '" + kind + "'");
  }

  // [step]
  auto& st = run.step;
  st.cfl_safety = cfg.get_double("step.cfl_safety", st.cfl_safety);
  require(cfg, "step.cfl_safety", st.cfl_safety > 0.0 && st.cfl_safety <= 1.0, "cfl_safety must lie in (0, 1]");
  st.reaction_safety = cfg.get_double("step.reaction_safety", st.reaction_safety);
  require(cfg, "step.reaction_safety", st.reaction_safety > 0.0 && st.reaction_safety <= 1.0,
          "reaction_safety must lie in (0, 1]");
  st.dt_min = cfg.get_double("step.dt_min", st.dt_min);
  require(cfg, "step.dt_min", st.dt_min > 0.0, "dt_min must be > 0");
  st.f_cap = cfg.get_double("step.f_cap", st.f_cap);
  const double initial_max = initial_field(prob.initial, prob.grid).max();
  require(cfg, "step.f_cap", st.f_cap > initial_max, "f_cap must exceed the initial maximum");
  const long long stride = cfg.get_int("step.sample_stride", 10);
  require(cfg, "step.sample_stride", stride >= 1, "sample_stride must be >= 1");
  st.sample_stride = static_cast<std::size_t>(stride);
  const long long max_steps = cfg.get_int("step.max_steps", static_cast<long long>(st.max_steps));
  require(cfg, "step.max_steps", max_steps >= 1, "max_steps must be >= 1");
  st.max_steps = static_cast<std::size_t>(max_steps);

  // [constants]
  if (cfg.has("constants.preset")) {
    const std::string name = cfg.get_string("constants.preset");
    try {
      const Preset pr = preset(name);
      run.constants = pr.constants;
      run.constants_label = pr.name;
      if (name.starts_with("blowup(")) run.blowup_c = pr.constants.c;
    } catch (const Error& e) {
      cfg.fail("constants.preset", e.what());
    }
    for (const char* key : {"constants.alpha", "constants.beta", "constants.c", "constants.a"})
      if (cfg.has(key)) cfg.fail(key, "explicit constants conflict with constants.preset");
  } else {
    run.constants = {cfg.get_double("constants.alpha"), cfg.get_double("constants.beta"), cfg.get_double("constants.c"),
                     cfg.get_double("constants.a")};
    run.constants_label = "explicit";
  }

  // [checks]
  const std::string checks_key = "checks.enabled";
  for (const auto& name : cfg.get_list(checks_key, std::vector<std::string>{"h0"}))
    run.checks.insert(check_from_string(cfg, checks_key, name));
  require(cfg, checks_key, !run.checks.empty(), "at least one check must be enabled");
  run.t_min_fraction = cfg.get_double("checks.t_min_fraction", run.t_min_fraction);
  run.t_max_fraction = cfg.get_double("checks.t_max_fraction", run.t_max_fraction);
  require(cfg, "checks.t_min_fraction", run.t_min_fraction > 0.0, "t_min_fraction must be > 0");
  require(cfg, "checks.t_max_fraction", run.t_max_fraction > run.t_min_fraction && run.t_max_fraction <= 1.0,
          "t_max_fraction must lie in (t_min_fraction, 1]");
  run.h0_tolerance = cfg.get_double("checks.h0_tolerance", run.h0_tolerance);
  run.residual_tolerance = cfg.get_double("checks.residual_tolerance", run.residual_tolerance);
  run.classical_tolerance = cfg.get_double("checks.classical_tolerance", run.classical_tolerance);
  const long long pairs = cfg.get_int("checks.classical_pairs", static_cast<long long>(run.classical_pairs));
  require(cfg, "checks.classical_pairs", pairs >= 1, "classical_pairs must be >= 1");
  run.classical_pairs = static_cast<std::size_t>(pairs);
  if (cfg.has("checks.blowup_c")) run.blowup_c = cfg.get_double("checks.blowup_c");
  run.localizer_margin = cfg.get_double("checks.localizer_margin", run.localizer_margin);
  require(cfg, "checks.localizer_margin", run.localizer_margin > 0.0 && run.localizer_margin < 0.5,
          "localizer_margin must lie in (0, 0.5)");
  run.localizer_b_factor = cfg.get_double("checks.localizer_b_factor", run.localizer_b_factor);
  require(cfg, "checks.localizer_b_factor", run.localizer_b_factor > 1.0, "localizer_b_factor must be > 1");
  if (run.checks.count(Check::hr))
    require(cfg, cfg.has("constants.beta") ? "constants.beta" : "checks.enabled", run.constants.beta > 0.0,
            "the hr check needs beta > 0");
  run.rescale_lambda = cfg.get_double("checks.rescale_lambda", run.rescale_lambda);
  require(cfg, "checks.rescale_lambda", run.rescale_lambda > 0.0, "rescale_lambda must be > 0");
  run.rescale_tolerance = cfg.get_double("checks.rescale_tolerance", run.rescale_tolerance);

  // [output]
  run.out_dir = cfg.get_string("output.dir", "out");
  const auto formats = cfg.get_list("output.formats", std::vector<std::string>{"csv", "json"});
  run.write_csv = std::find(formats.begin(), formats.end(), "csv") != formats.end();
  run.write_json = std::find(formats.begin(), formats.end(), "json") != formats.end();
  for (const auto& f : formats)
    require(cfg, "output.formats", f == "csv" || f == "json", "unknown output format '" + f + "'");

  run.seed = static_cast<std::uint64_t>(cfg.get_int("run.seed", 0));
  return run;
}

void apply(RunConfig& run, const Overrides& o) {
  if (o.seed) run.seed = *o.seed;
  if (o.allow_inadmissible) run.allow_inadmissible = true;
  if (o.out_dir) run.out_dir = *o.out_dir;
}

RunResult run_solve(const RunConfig& run) {
  const SolveTrace trace = solve(run.problem, run.step);
  std::filesystem::create_directories(run.out_dir);
  save_trace(run.out_dir / "trace", trace);

  json meta;
  meta["status"] = to_string(trace.status.kind);
  meta["t_stop"] = trace.status.t;
  meta["detail"] = trace.status.detail;
  meta["steps"] = trace.step_log.size();
  meta["samples"] = trace.samples.size();
  meta["final_max"] = trace.samples.back().f.max();
  meta["boundary_decay_ratio"] = boundary_decay_ratio(run.problem.initial, run.problem.grid);
  meta["regime"] = to_string(classify_regime(run.problem.dim(), run.problem.p));
  if (trace.blew_up()) {
    try {
      const auto est = estimate_blowup_time(trace, run.problem.p);
      meta["t_estimate"] = est.t_estimate;
      meta["fit_residual"] = est.fit_residual;
    } catch (const Error&) {
    }
  }
  write_text(run.out_dir / "solve.json", meta.dump(2) + "\n");
  return {meta, trace.status.kind == Termination::aborted ? exit_abort : exit_ok};
}

namespace {

// max relative discrepancy between the rescaled original trace and the
// trace of the rescaled problem, over rescaled sample times up to 0.9 of the
// shorter run.
double commutation_discrepancy(const SolveTrace& original, const SolveTrace& rescaled, const RescaleSpec& spec) {
  const SolveTrace mapped = rescale_trace(original, spec);
  const double horizon = 0.9 * std::min(mapped.final_time(), rescaled.final_time());
  double worst = 0.0;
  for (const auto& s : mapped.samples) {
    if (s.t > horizon) break;
    for (std::size_t i = 0; i < s.f.size(); ++i) {
      const double other = trace_value(rescaled, {s.f.grid().point(i), s.t});
      worst = std::max(worst, std::abs(other - s.f[i]) / s.f[i]);
    }
  }
  return worst;
}

}  // namespace

RunResult run_verify(const RunConfig& run, const std::optional<std::filesystem::path>& trace_dir) {
  const int n = run.problem.dim();
  const double p = run.problem.p;
  const HarnackConstants& k = run.constants;

  const AdmissibilityVerdict adm = check_admissible(n, p, k);
  if (!adm.admissible() && !run.allow_inadmissible)
    throw ConfigError("constants", 0,
                      "inadmissible for (n=" + std::to_string(n) + ", p=" + std::to_string(p) + "): " + violated_list(adm) +
                          "; pass --allow-inadmissible to compute verdicts anyway");

  SolveTrace trace;
  if (trace_dir) {
    try {
      trace = load_trace(*trace_dir);
    } catch (const Error& e) {
      throw ConfigError(trace_dir->string(), 0, std::string("missing or unreadable trace: ") + e.what());
    }
  } else {
    trace = solve(run.problem, run.step);
  }
  std::filesystem::create_directories(run.out_dir);

  json summary;
  summary["status"] = to_string(trace.status.kind);
  summary["t_stop"] = trace.status.t;
  summary["min_h0"] = nullptr;
  summary["residual_stats"] = nullptr;
  summary["classical_pass_fraction"] = nullptr;
  json constants = to_json(k);
  constants["label"] = run.constants_label;
  constants["admissibility"] = to_json(adm);
  summary["constants"] = constants;
  summary["regime"] = to_string(classify_regime(n, p));
  summary["seed"] = run.seed;
  json checks = json::object();

  bool all_pass = adm.admissible();
  if (trace.status.kind == Termination::aborted) {
    summary["detail"] = trace.status.detail;
    summary["checks"] = checks;
    summary["exit_code"] = exit_abort;
    if (run.write_json) write_text(run.out_dir / "summary.json", summary.dump(2) + "\n");
    return {summary, exit_abort};
  }

  const double tf = trace.final_time();
  const TimeWindow window{run.t_min_fraction * tf, run.t_max_fraction * tf};
  summary["window"] = {window.t_min, window.t_max};

  auto record = [&](Check c, json body, bool pass) {
    body["pass"] = pass;
    checks[std::string(to_string(c))] = std::move(body);
    all_pass = all_pass && pass;
  };

  if (run.checks.count(Check::h0)) {
    const auto rep = scan_h0(trace, k, p, window, run.h0_tolerance);
    summary["min_h0"] = rep.min_h;
    record(Check::h0,
           {{"min", rep.min_h},
            {"argmin_x", format_point(rep.argmin_x, n)},
            {"argmin_t", rep.argmin_t},
            {"tolerance", rep.tolerance},
            {"verdict", to_string(rep.verdict)}},
           rep.verdict != Verdict::violated);
    if (run.write_csv) {
      std::ostringstream csv;
      csv << std::setprecision(17) << "t,min_h0\n";
      for (const auto& pt : rep.min_curve) csv << pt.t << ',' << pt.min_h << '\n';
      write_text(run.out_dir / "h0_curve.csv", csv.str());
    }
  }

  if (run.checks.count(Check::hr)) {
    std::vector<Interval> rect;
    for (int ax = 0; ax < n; ++ax) {
      const auto& iv = run.problem.grid.interval(ax);
      const double m = run.localizer_margin * iv.length();
      rect.push_back({iv.lo + m, iv.hi - m});
    }
    const double b = run.localizer_b_factor * localizer_b_min(n, k);
    const auto loc = make_localizer(rect, k, b);
    const auto rep = scan_hr(trace, k, p, loc, window, run.h0_tolerance);
    record(Check::hr, {{"min", rep.min_h}, {"b", b}, {"tolerance", rep.tolerance}}, rep.verdict != Verdict::violated);
  }

  if (run.checks.count(Check::residual)) {
    const auto rs = evolution_residual(trace, k, p, window);
    summary["residual_stats"] = {{"max_rel", rs.max_rel},
                                 {"mean_rel", rs.mean_rel},
                                 {"max_abs_ht", rs.max_abs_ht},
                                 {"samples_used", rs.samples_used}};
    record(Check::residual, {{"max_rel", rs.max_rel}, {"tolerance", run.residual_tolerance}},
           rs.max_rel <= run.residual_tolerance);
  }

  if (run.checks.count(Check::blowup) || trace.blew_up()) {
    double c = run.blowup_c.value_or(n * (p - 1.0));
    const auto rep = analyze_blowup(trace, n, p, c);
    if (rep.t_estimate) summary["t_estimate"] = *rep.t_estimate;
    if (run.checks.count(Check::blowup)) {
      json body{{"regime", to_string(rep.regime)}, {"detected", rep.detected}, {"method", rep.method}};
      bool pass = true;
      if (rep.threshold_value) body["threshold"] = *rep.threshold_value;
      if (rep.t_estimate) body["t_estimate"] = *rep.t_estimate;
      if (rep.threshold_met_at) {
        const auto normalized = normalize_to_unit_time(trace, p, rep.threshold_met_at->t);
        const bool monotone = center_monotonicity_check(normalized, *rep.threshold_value, 1.0);
        body["threshold_met_t"] = rep.threshold_met_at->t;
        body["monotone_after_threshold"] = monotone;
        pass = monotone;
      }
      record(Check::blowup, body, pass);
    }
  }

  if (run.checks.count(Check::classical)) {
    const auto hyp = check_path_hypotheses(n, p, k);
    const auto pairs = random_pairs(trace.grid(), window, run.classical_pairs, run.seed);
    const auto verdicts = classical_harnack_check(trace, pairs, n, run.classical_tolerance);
    const auto passed = static_cast<std::size_t>(std::count_if(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; }));
    const double fraction = static_cast<double>(passed) / static_cast<double>(verdicts.size());
    double min_slack = verdicts.front().slack;
    for (const auto& v : verdicts) min_slack = std::min(min_slack, v.slack);
    summary["classical_pass_fraction"] = fraction;
    record(Check::classical,
           {{"pairs", verdicts.size()},
            {"min_slack", min_slack},
            {"tolerance", run.classical_tolerance},
            {"hypotheses", to_json(hyp)}},
           passed == verdicts.size() && hyp.admissible());
    if (run.write_csv) {
      std::ostringstream csv;
      csv << std::setprecision(17) << "x1,t1,x2,t2,lhs,rhs,slack,pass\n";
      for (const auto& v : verdicts)
        csv << format_point(v.pair.first.x, n) << ',' << v.pair.first.t << ',' << format_point(v.pair.second.x, n) << ','
            << v.pair.second.t << ',' << v.lhs << ',' << v.rhs << ',' << v.slack << ',' << (v.pass ? 1 : 0) << '\n';
      write_text(run.out_dir / "classical.csv", csv.str());
    }
  }

  if (run.checks.count(Check::rescale)) {
    if (trace_dir) throw ConfigError(trace_dir->string(), 0, "the rescale check needs an inline solve, not a stored trace");
    const RescaleSpec spec{run.rescale_lambda, p};
    const SolveTrace other = solve(rescale_problem(run.problem, spec), run.step);
    json body{{"lambda", spec.lambda}};
    bool pass = other.status.kind != Termination::aborted;
    if (pass) {
      const double disc = commutation_discrepancy(trace, other, spec);
      body["max_rel_discrepancy"] = disc;
      body["tolerance"] = run.rescale_tolerance;
      pass = disc <= run.rescale_tolerance;
      if (trace.blew_up() && other.blew_up()) {
        const double ratio =
            estimate_blowup_time(other, p).t_estimate / estimate_blowup_time(trace, p).t_estimate;
        body["blowup_time_ratio"] = ratio;
        pass = pass && std::abs(ratio / (spec.lambda * spec.lambda) - 1.0) <= run.rescale_time_tolerance;
      }
    }
    record(Check::rescale, body, pass);
  }

  const int code = all_pass ? exit_ok : exit_verdict;
  summary["checks"] = checks;
  summary["exit_code"] = code;
  if (run.write_json) write_text(run.out_dir / "summary.json", summary.dump(2) + "\n");
  return {summary, code};
}

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("--axis", 0, "expected section.key=v1,v2,... got '" + spec + "'");
  SweepAxis axis{trim(spec.substr(0, eq)), split_list(spec.substr(eq + 1))};
  if (axis.key.empty() || axis.key.find('.') == std::string::npos)
    throw ConfigError("--axis", 0, "axis key must look like section.key");
  if (axis.values.empty()) throw ConfigError("--axis", 0, "axis '" + axis.key + "' has no values");
  return axis;
}

RunResult run_sweep(const Config& base, const std::vector<SweepAxis>& axes, const Overrides& o, unsigned jobs) {
  if (axes.empty()) throw ConfigError(base.source(), 0, "sweep needs at least one --axis");
  for (const auto& a : axes)
    if (a.values.empty()) throw ConfigError(base.source(), 0, "axis '" + a.key + "' has no values");

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();

  // Validate every point before running any of them.
  struct Point {
    std::vector<std::string> values;
    RunConfig run;
  };
  std::vector<Point> points;
  const RunConfig base_run = parse_run_config(base);
  const std::filesystem::path root = o.out_dir.value_or(base_run.out_dir);
  char name[32];
  for (std::size_t idx = 0; idx < total; ++idx) {
    Config cfg = base;
    std::vector<std::string> values;
    std::size_t rem = idx;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
      const auto& v = it->values[rem % it->values.size()];
      rem /= it->values.size();
      cfg.set(it->key, v);
      values.insert(values.begin(), v);
    }
    RunConfig run = parse_run_config(cfg);
    apply(run, o);
    std::snprintf(name, sizeof name, "point_%03zu", idx);
    run.out_dir = root / name;
    points.push_back({std::move(values), std::move(run)});
  }

  std::vector<RunResult> results(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      try {
        results[i] = run_verify(points[i].run);
      } catch (const ConfigError& e) {
        errors[i] = e.what();
        results[i].exit_code = exit_usage;
      } catch (const std::exception& e) {
        errors[i] = e.what();
        results[i].exit_code = exit_abort;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::ostringstream csv;
  csv << std::setprecision(17) << "point";
  for (const auto& a : axes) csv << ',' << a.key;
  csv << ",status,t_estimate,min_h0,exit_code\n";
  json list = json::array();
  int code = exit_ok;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& s = results[i].summary;
    csv << i;
    for (const auto& v : points[i].values) csv << ',' << v;
    const auto field = [&](const char* key) -> std::string {
      if (!s.contains(key) || s[key].is_null()) return "";
      std::ostringstream out;
      out << std::setprecision(17);
      if (s[key].is_number()) out << s[key].get<double>();
      else out << s[key].get<std::string>();
      return out.str();
    };
    csv << ',' << (errors[i].empty() ? field("status") : "error") << ',' << field("t_estimate") << ','
        << field("min_h0") << ',' << results[i].exit_code << '\n';
    json entry{{"point", i}, {"exit_code", results[i].exit_code}};
    json axis_values;
    for (std::size_t a = 0; a < axes.size(); ++a) axis_values[axes[a].key] = points[i].values[a];
    entry["axes"] = axis_values;
    if (!errors[i].empty()) entry["error"] = errors[i];
    else entry["summary"] = s;
    list.push_back(entry);
    code = std::max(code, results[i].exit_code);
  }
  std::filesystem::create_directories(root);
  write_text(root / "sweep.csv", csv.str());
  json out{{"points", list}, {"exit_code", code}};
  write_text(root / "sweep.json", out.dump(2) + "\n");
  return {out, code};
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  std::vector<double> out;
  const auto parts = split_list(spec, ':');
  auto number = [&](const std::string& s) {
    std::istringstream in(s);
    double v = 0.0;
    if (!(in >> v) || !(in >> std::ws).eof()) throw ConfigError("grid", 0, "bad number '" + s + "' in '" + spec + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    if (parts.size() != 3) throw ConfigError("grid", 0, "range must be lo:hi:count, got '" + spec + "'");
    const double lo = number(parts[0]), hi = number(parts[1]);
    const double count = number(parts[2]);
    if (count < 1 || std::floor(count) != count) throw ConfigError("grid", 0, "count must be a positive integer");
    const auto m = static_cast<std::size_t>(count);
    for (std::size_t i = 0; i < m; ++i) out.push_back(m == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1));
  } else {
    for (const auto& s : split_list(spec)) out.push_back(number(s));
  }
  if (out.empty()) throw ConfigError("grid", 0, "empty grid '" + spec + "'");
  return out;
}

std::string region_csv(int n, double p, const std::vector<double>& alphas, const std::vector<double>& betas) {
  if (n < 1) throw ConfigError("region", 0, "n must be >= 1");
  if (!(p > 1.0)) throw ConfigError("region", 0, "p must be > 1");
  std::ostringstream csv;
  csv << std::setprecision(17) << "n,p,alpha,beta,c_lo,c_hi,a_min,feasible\n";
  std::size_t rows = 0;
  for (double alpha : alphas) {
    for (double beta : betas) {
      if (!(alpha > beta && beta >= 0.0)) continue;
      const auto r = feasible_region(n, p, alpha, beta);
      csv << n << ',' << p << ',' << alpha << ',' << beta << ',' << r.c_lo << ',' << r.c_hi << ',' << r.a_min << ','
          << (r.feasible ? 1 : 0) << '\n';
      ++rows;
    }
  }
  if (rows == 0) throw ConfigError("region", 0, "no grid cell satisfies alpha > beta >= 0");
  return csv.str();
}

std::string preset_table() {
  std::ostringstream out;
  out << std::setprecision(6);
  out << std::left << std::setw(16) << "name" << std::setw(3) << "n" << std::setw(5) << "p";
  for (const char* h : {"alpha", "beta", "c", "a"}) out << std::setw(10) << h;
  out << std::setw(12) << "admissible" << "f-form (time, grad, reaction)\n";
  auto row = [&](const Preset& pr) {
    const auto adm = check_admissible(pr.n, pr.p, pr.constants);
    const auto ff = f_form(pr.constants, pr.p);
    out << std::left << std::setw(16) << pr.name << std::setw(3) << pr.n << std::setw(5) << pr.p << std::setw(10)
        << pr.constants.alpha << std::setw(10) << pr.constants.beta << std::setw(10) << pr.constants.c << std::setw(10)
        << pr.constants.a << std::setw(12) << (adm.admissible() ? "yes" : "no") << '(' << ff.time_coeff << ", "
        << ff.grad_coeff << ", " << ff.reaction_coeff << ")\n";
  };
  for (const char* name : {"hamilton_1d", "improved_1d", "dim2", "blowup(1,2,1)"}) row(preset(name));
  out << "blowup(n,p,c) is a family: alpha=2, beta=1, a=2n, c in [n(p-1), 2)\n";
  return out.str();
}

}  // namespace ese::app
