#include "mlb_cli/cli.hpp"

#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mlb_cli/config.hpp"
#include "mlb_cli/runner.hpp"
#include "mlb_cli/verify.hpp"

namespace mlb::cli {

namespace {

struct RunArgs {
  std::string target;
  std::string out_dir = "mlb-out";
  std::string mode;
  double dt = 0.0;
  double t_end = -1.0;
};

int do_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  SimConfig config = resolve_config(a.target);
  if (!a.mode.empty()) config.mode = parse_mode(a.mode);
  if (a.dt != 0.0) {
    if (!(a.dt > 0.0)) throw std::invalid_argument(fmt::format("--dt: dt > 0 violated (got {})", a.dt));
    config.dt = a.dt;
  }
  if (a.t_end >= 0.0) config.t_end = a.t_end;
  config.validate();

  const auto summary = run_simulation(config, a.out_dir);
  print_summary(out, config, summary);
  if (summary.drift_warnings > 0) {
    fmt::print(err, "warning: moments of f differed from the moment state by more than {:.1e} in {} step(s)\n",
               config.drift_threshold, summary.drift_warnings);
  }
  if (summary.failed) {
    fmt::print(err, "error: solver failure: {}\n", summary.failure);
    return kExitSolverFailure;
  }
  return kExitSuccess;
}

int do_verify(const std::string& target, std::ostream& out) {
  const auto config = resolve_config(target);
  const auto report = verify_config(config);
  fmt::print(out, "{}\n", config.name);
  print_report(out, report);
  return report.passed() ? kExitSuccess : kExitVerificationFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-species Lenard-Bernstein relaxation solver", "mlb"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a configuration file or built-in preset");
  run->add_option("config", run_args.target, "YAML configuration file or preset name")->required();
  run->add_option("--out", run_args.out_dir, "Output directory for CSV and SVG")->capture_default_str();
  run->add_option("--mode", run_args.mode, "grid or moments")->check(CLI::IsMember({"grid", "moments"}));
  run->add_option("--dt", run_args.dt, "Override the time step");
  run->add_option("--t-end", run_args.t_end, "Override the final time")->check(CLI::NonNegativeNumber);

  std::string verify_target;
  auto* verify = app.add_subcommand("verify", "Check coefficient identities for a configuration");
  verify->add_option("config", verify_target, "YAML configuration file or preset name")->required();

  app.add_subcommand("presets", "List the built-in presets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n{}", e.what(), app.help());
    return kExitConfigError;
  }

  try {
    if (run->parsed()) return do_run(run_args, out, err);
    if (verify->parsed()) return do_verify(verify_target, out);
    for (const auto& name : preset_names()) fmt::print(out, "{:<14} {}\n", name, preset_description(name));
    return kExitSuccess;
  } catch (const ConfigError& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitSolverFailure;
  }
}

}  // namespace mlb::cli
