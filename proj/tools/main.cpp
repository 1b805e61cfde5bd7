#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "armlab/acceptance.hpp"
#include "armlab/scenario.hpp"
#include "armlab/trace_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSimulation = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
  std::string config_path;
  armlab::cfg::CliOverrides overrides;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_controller) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  if (with_controller)
    cmd->add_option("--controller", opts.overrides.controller,
                    "controller preset (pdsmc|tsmc|ftsmc)");
  cmd->add_option("--switching", opts.overrides.switching, "switching law (sign|tanh)");
  cmd->add_option("--noise-sigma", opts.overrides.noise_sigma,
                  "measurement noise standard deviation [rad]");
  cmd->add_option("--seed", opts.overrides.seed, "noise seed");
  cmd->add_option("--dt", opts.overrides.dt, "integration/control step [s]");
  cmd->add_option("--t-end", opts.overrides.t_end, "simulation horizon [s]");
  cmd->add_option("--out", opts.overrides.out_dir, "output directory");
}

armlab::cfg::RunSpec resolve_spec(const CommonOptions& opts) {
  armlab::cfg::RunSpec spec = opts.config_path.empty()
                                  ? armlab::cfg::default_run_spec()
                                  : armlab::cfg::load_config(opts.config_path);
  armlab::cfg::apply_overrides(spec, opts.overrides);
  return spec;
}

int cmd_run(const CommonOptions& opts) {
  const armlab::cfg::RunSpec spec = resolve_spec(opts);
  const armlab::cfg::ControllerChoice& controller = spec.controllers.front();
  const armlab::scenario::FileMap files = armlab::scenario::render_run(spec, controller);
  armlab::scenario::write_files(spec.out_dir, files);
  std::cout << "wrote " << files.size() << " files for controller '" << controller.name
            << "' under " << spec.out_dir << "\n";
  return 0;
}

int cmd_compare(const CommonOptions& opts) {
  const armlab::cfg::RunSpec spec = resolve_spec(opts);
  if (spec.controllers.size() < 2)
    throw armlab::cfg::ConfigError("config: compare needs at least 2 controllers");
  const armlab::scenario::FileMap files = armlab::scenario::render_compare(spec);
  armlab::scenario::write_files(spec.out_dir, files);
  std::cout << files.at("compare.txt");
  std::cout << "wrote " << files.size() << " files under " << spec.out_dir << "\n";
  return 0;
}

int cmd_paper_suite(const CommonOptions& opts) {
  armlab::cfg::RunSpec spec = armlab::cfg::default_run_spec();
  armlab::cfg::apply_overrides(spec, opts.overrides);

  armlab::scenario::FileMap files = armlab::scenario::render_suite(spec);
  const auto results = armlab::acceptance::evaluate_all();
  files["acceptance_summary.txt"] = armlab::acceptance::summary_text(results);
  armlab::scenario::write_files(spec.out_dir, files);

  for (const char* study : {"study_sign", "study_tanh", "study_noise"}) {
    std::cout << "== " << study << " ==\n";
    std::cout << files.at(std::string(study) + "/compare.txt") << "\n";
  }
  std::cout << files.at("acceptance_summary.txt");
  std::cout << "wrote " << files.size() << " files under " << spec.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-mode trajectory-tracking laboratory for a planar 3R arm"};
  app.require_subcommand(1);

  CommonOptions run_opts, compare_opts, suite_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "simulate one controller and write its artifacts");
  add_common_flags(run_cmd, run_opts, true);
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run all configured controllers and tabulate metrics");
  add_common_flags(compare_cmd, compare_opts, false);
  CLI::App* suite_cmd = app.add_subcommand(
      "paper-suite", "run the three benchmark studies and the acceptance checks");
  suite_cmd->add_option("--out", suite_opts.overrides.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opts);
    if (compare_cmd->parsed()) return cmd_compare(compare_opts);
    if (suite_cmd->parsed()) return cmd_paper_suite(suite_opts);
  } catch (const armlab::cfg::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const armlab::SimulationDiverged& e) {
    std::cerr << "simulation aborted: " << e.what() << "\n";
    return kExitSimulation;
  } catch (const armlab::io::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
