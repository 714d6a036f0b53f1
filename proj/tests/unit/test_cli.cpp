#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "app/run.hpp"
#include "oracles.hpp"

using namespace ese;
using namespace ese::app;
namespace fs = std::filesystem;

namespace {

const char* constant_ini = R"(# constant data
[problem]
p = 2
dim = 1
points = 32
lo = 0
hi = 6.283185307179586
t_end = 10

[initial]
kind = constant
level = 1

[step]
sample_stride = 1

[constants]
preset = hamilton_1d

[checks]
enabled = h0, blowup
)";

const char* gaussian_ini = R"([problem]
p = 2
dim = 1
points = 64
lo = -4
hi = 4
t_end = 0.5

[initial]
kind = gaussian
amplitude = 1
width = 0.2

[step]
sample_stride = 10

[constants]
preset = hamilton_1d

[checks]
enabled = h0, classical
classical_pairs = 20
)";

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, "test.ini");
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ese_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path path = dir / "run.ini";
  std::ofstream(path) << text;
  return path;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(ESE_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("config syntax errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("[problem\np = 2\n") == 1);
  CHECK(line_of("[problem]\np 2\n") == 2);
  CHECK(line_of("p = 2\n") == 1);
  CHECK(line_of("[a]\nx = 1\n\nx = 2\n") == 4);
  CHECK(line_of("# c\n[a]\nx = 1 ; trailing\n") == -1);
}

TEST_CASE("config accessors") {
  const Config c = parse("[a]\nx = 1.5\nn = 3\nflag = yes\nlist = h0, hr ,residual\n");
  CHECK(c.get_double("a.x") == 1.5);
  CHECK(c.get_int("a.n") == 3);
  CHECK(c.get_bool("a.flag"));
  CHECK(c.get_list("a.list") == std::vector<std::string>{"h0", "hr", "residual"});
  CHECK(c.get_double("a.missing", 2.0) == 2.0);
  CHECK(c.line("a.n") == 3);
  CHECK_THROWS_AS(c.get_double("a.missing"), ConfigError);
  CHECK_THROWS_AS(c.get_int("a.x"), ConfigError);
}

TEST_CASE("semantic validation points at the offending key") {
  auto line_of = [](const std::string& text) {
    try {
      parse_run_config(parse(text));
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  const std::string good = gaussian_ini;
  CHECK(line_of(good) == -1);
  CHECK(line_of(replace(good, "p = 2", "p = 1")) == 2);
  CHECK(line_of(replace(good, "enabled = h0, classical", "enabled =")) == 21);
  CHECK(line_of(replace(good, "enabled = h0, classical", "enabled = h0, magic")) == 21);
  CHECK(line_of(replace(good, "preset = hamilton_1d", "preset = nope")) == 18);
  CHECK(line_of(replace(good, "enabled = h0, classical", "enabled = hr")) > 0);
  CHECK(line_of(replace(good, "points = 64", "points = 2")) == 4);
}

TEST_CASE("solve on constant data reports the ODE blowup time") {
  RunConfig run = parse_run_config(parse(constant_ini));
  run.out_dir = scratch("solve");
  const auto r = run_solve(run);
  CHECK(r.exit_code == exit_ok);
  CHECK(r.summary["status"] == "blowup");
  CHECK(r.summary["t_estimate"].get<double>() == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(fs::exists(run.out_dir / "trace" / "trace.json"));
  CHECK(fs::exists(run.out_dir / "solve.json"));
}

TEST_CASE("verify writes the report schema") {
  RunConfig run = parse_run_config(parse(gaussian_ini));
  run.out_dir = scratch("verify");
  const auto r = run_verify(run);
  CHECK(r.exit_code == exit_ok);
  for (const char* key : {"status", "min_h0", "residual_stats", "classical_pass_fraction", "constants", "regime"})
    CHECK(r.summary.contains(key));
  CHECK(r.summary["status"] == "reached_t_end");
  CHECK(r.summary["classical_pass_fraction"].get<double>() == 1.0);
  CHECK(fs::exists(run.out_dir / "summary.json"));
  CHECK(fs::exists(run.out_dir / "h0_curve.csv"));
  const std::string csv = slurp(run.out_dir / "classical.csv");
  CHECK(csv.rfind("x1,t1,x2,t2,lhs,rhs,slack,pass\n", 0) == 0);
}

TEST_CASE("inadmissible constants") {
  const std::string text = replace(gaussian_ini, "preset = hamilton_1d", "alpha = 1\nbeta = 0\nc = 0.1\na = 0.01");
  RunConfig run = parse_run_config(parse(text));
  run.out_dir = scratch("inadmissible");
  CHECK_THROWS_AS(run_verify(run), ConfigError);
  run.allow_inadmissible = true;
  const auto r = run_verify(run);
  CHECK(r.exit_code == exit_verdict);
  const auto& violated = r.summary["constants"]["admissibility"]["violated"];
  REQUIRE(violated.size() == 2);
  CHECK(violated[0]["name"] == "c_lower");
  CHECK(violated[1]["name"] == "a_lower");
}

TEST_CASE("missing trace is a usage error") {
  RunConfig run = parse_run_config(parse(gaussian_ini));
  run.out_dir = scratch("missing");
  CHECK_THROWS_AS(run_verify(run, run.out_dir / "no_such_trace"), ConfigError);
}

TEST_CASE("sweep over the constant level") {
  const Config base = parse(constant_ini);
  Overrides o;
  o.out_dir = scratch("sweep");
  const auto r = run_sweep(base, {parse_axis("initial.level=0.25,0.5,1.0")}, o, 2);
  CHECK(r.exit_code == exit_ok);
  const double expected[] = {4.0, 2.0, 1.0};
  REQUIRE(r.summary["points"].size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = r.summary["points"][i]["summary"]["t_estimate"].get<double>();
    CHECK(t == doctest::Approx(expected[i]).epsilon(1e-2));
    CHECK(fs::exists(*o.out_dir / ("point_00" + std::to_string(i)) / "summary.json"));
  }
  CHECK(fs::exists(*o.out_dir / "sweep.csv"));
  CHECK_THROWS_AS(parse_axis("initial.level="), ConfigError);
  CHECK_THROWS_AS(parse_axis("level=1,2"), ConfigError);
}

TEST_CASE("lambda sweep with the rescaling check") {
  const std::string text = replace(gaussian_ini, "enabled = h0, classical", "enabled = rescale");
  Overrides o;
  o.out_dir = scratch("lambda");
  const auto r = run_sweep(parse(text), {parse_axis("checks.rescale_lambda=2,0.5")}, o, 2);
  CHECK(r.exit_code == exit_ok);
  for (const auto& p : r.summary["points"]) CHECK(p["summary"]["checks"]["rescale"]["pass"] == true);
}

TEST_CASE("region map") {
  const std::string one = region_csv(1, 2.0, parse_grid_spec("0.5:2:4"), parse_grid_spec("0:1.5:4"));
  CHECK(one.rfind("n,p,alpha,beta,c_lo,c_hi,a_min,feasible\n", 0) == 0);
  CHECK(one.find(",1\n") != std::string::npos);
  const std::string three = region_csv(3, 2.0, parse_grid_spec("0.5:2:8"), parse_grid_spec("0:1.5:8"));
  CHECK(three.find(",1\n") == std::string::npos);
  CHECK_THROWS_AS(region_csv(1, 2.0, {1.0}, {1.0}), ConfigError);
  CHECK(parse_grid_spec("0:1:3") == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(parse_grid_spec("0.1,0.2") == std::vector<double>{0.1, 0.2});
  CHECK_THROWS_AS(parse_grid_spec("0:1"), ConfigError);
}

TEST_CASE("binary exit codes") {
  const fs::path dir = scratch("binary");
  const fs::path good = write_config(dir, gaussian_ini);
  CHECK(run_binary("verify --config " + good.string() + " --out " + (dir / "a").string()) == exit_ok);
  CHECK(run_binary("verify --config " + (dir / "nope.ini").string()) == exit_usage);
  CHECK(run_binary("frobnicate") == exit_usage);
  CHECK(run_binary("preset-list") == exit_ok);
  CHECK(run_binary("region --n 1 --p 2 --alpha 1 --beta 1") == exit_usage);

  const fs::path bad_dir = dir / "bad";
  fs::create_directories(bad_dir);
  const fs::path bad = write_config(bad_dir, replace(gaussian_ini, "p = 2", "p = 1"));
  CHECK(run_binary("solve --config " + bad.string()) == exit_usage);

  const fs::path inad_dir = dir / "inad";
  fs::create_directories(inad_dir);
  const fs::path inad =
      write_config(inad_dir, replace(gaussian_ini, "preset = hamilton_1d", "alpha = 1\nbeta = 0\nc = 0.1\na = 0.01"));
  CHECK(run_binary("verify --config " + inad.string() + " --out " + (dir / "b").string()) == exit_usage);
  CHECK(run_binary("verify --allow-inadmissible --config " + inad.string() + " --out " + (dir / "b").string()) ==
        exit_verdict);

  const fs::path abort_dir = dir / "abort";
  fs::create_directories(abort_dir);
  const fs::path abort_cfg = write_config(abort_dir, replace(gaussian_ini, "sample_stride = 10", "max_steps = 5"));
  CHECK(run_binary("verify --config " + abort_cfg.string() + " --out " + (dir / "c").string()) == exit_abort);
  CHECK(run_binary("solve --config " + abort_cfg.string() + " --out " + (dir / "d").string()) == exit_abort);
}

TEST_CASE("identical config and seed give byte-identical reports") {
  const fs::path dir = scratch("determinism");
  const fs::path cfg = write_config(dir, gaussian_ini);
  for (const char* out : {"x", "y"})
    REQUIRE(run_binary("verify --seed 5 --config " + cfg.string() + " --out " + (dir / out).string()) == exit_ok);
  for (const char* file : {"summary.json", "classical.csv", "h0_curve.csv"})
    CHECK(slurp(dir / "x" / file) == slurp(dir / "y" / file));

  REQUIRE(run_binary("verify --seed 6 --config " + cfg.string() + " --out " + (dir / "z").string()) == exit_ok);
  CHECK(slurp(dir / "x" / "classical.csv") != slurp(dir / "z" / "classical.csv"));

  REQUIRE(run_binary("solve --config " + cfg.string() + " --out " + (dir / "s").string()) == exit_ok);
  REQUIRE(run_binary("verify --seed 5 --config " + cfg.string() + " --trace " + (dir / "s" / "trace").string() +
                     " --out " + (dir / "w").string()) == exit_ok);
  CHECK(slurp(dir / "x" / "summary.json") == slurp(dir / "w" / "summary.json"));
}
