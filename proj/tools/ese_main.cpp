#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <thread>

#include "app/run.hpp"
#include "ese/error.hpp"

namespace {

using namespace ese::app;

void print_summary(const RunResult& r) { std::cout << r.summary.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Numerical verification of differential Harnack estimates for f_t = Δf + f^p"};
  cli.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool allow_inadmissible = false;
  std::string out_dir;
  std::string trace_dir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> axis_specs;
  int region_n = 1;
  double region_p = 2.0;
  std::string alpha_grid = "0.5:2:16";
  std::string beta_grid = "0:1.5:16";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Seed for random endpoint pairs");
    sub->add_flag("--allow-inadmissible", allow_inadmissible, "Compute verdicts for inadmissible constants");
    sub->add_option("--out", out_dir, "Output directory");
  };

  auto* solve_cmd = cli.add_subcommand("solve", "Integrate the equation and store the trace");
  add_common(solve_cmd);
  auto* verify_cmd = cli.add_subcommand("verify", "Run the enabled checks on a stored or inline trace");
  add_common(verify_cmd);
  verify_cmd->add_option("--trace", trace_dir, "Trace directory written by solve");
  auto* sweep_cmd = cli.add_subcommand("sweep", "Verify every point of a parameter grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--axis", axis_specs, "section.key=v1,v2,... (repeatable)")->required();
  sweep_cmd->add_option("--jobs", jobs, "Concurrent points")->check(CLI::PositiveNumber);
  auto* region_cmd = cli.add_subcommand("region", "CSV feasibility map over an (alpha, beta) grid");
  region_cmd->add_option("--n", region_n, "Dimension")->required();
  region_cmd->add_option("--p", region_p, "Reaction exponent")->required();
  region_cmd->add_option("--alpha", alpha_grid, "lo:hi:count or comma list")->capture_default_str();
  region_cmd->add_option("--beta", beta_grid, "lo:hi:count or comma list")->capture_default_str();
  region_cmd->add_option("--out", out_dir, "Write the CSV here instead of stdout");
  cli.add_subcommand("preset-list", "List the named constant presets");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    Overrides o;
    o.seed = seed;
    o.allow_inadmissible = allow_inadmissible;
    if (!out_dir.empty()) o.out_dir = out_dir;

    if (cli.got_subcommand(region_cmd)) {
      const std::string csv = region_csv(region_n, region_p, parse_grid_spec(alpha_grid), parse_grid_spec(beta_grid));
      if (out_dir.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(out_dir, std::ios::binary) << csv;
      }
      return exit_ok;
    }
    if (cli.got_subcommand("preset-list")) {
      std::cout << preset_table();
      return exit_ok;
    }

    const Config cfg = Config::load(config_path);
    if (cli.got_subcommand(sweep_cmd)) {
      std::vector<SweepAxis> axes;
      for (const auto& s : axis_specs) axes.push_back(parse_axis(s));
      const RunResult r = run_sweep(cfg, axes, o, jobs);
      std::cout << "sweep: " << r.summary["points"].size() << " points, exit " << r.exit_code << '\n';
      return r.exit_code;
    }

    RunConfig run = parse_run_config(cfg);
    apply(run, o);
    const RunResult r = cli.got_subcommand(solve_cmd)
                            ? run_solve(run)
                            : run_verify(run, trace_dir.empty() ? std::nullopt
                                                                : std::optional<std::filesystem::path>(trace_dir));
    print_summary(r);
    return r.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ese::Error& e) {
    std::cerr << "error [" << ese::to_string(e.kind()) << "]: " << e.what() << '\n';
    return e.kind() == ese::ErrorKind::invalid_argument || e.kind() == ese::ErrorKind::unknown_preset ? exit_usage
                                                                                                      : exit_abort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_abort;
  }
}
