// Command-line front end for the ornithopter roll simulator.

#include <exception>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "orni/errors.hpp"

using namespace orni::cli;

int main(int argc, char** argv) {
  CLI::App app{"Articulated-wing ornithopter roll simulator"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Tethered time series and cycle averages");
  simulate->add_option("--config", sim_args.config, "Run configuration file")->required();
  simulate->add_option("--twist-deg", sim_args.twist_deg, "Differential twist, degrees");
  simulate->add_option("--out", sim_args.out, "Time-series CSV");
  simulate->add_option("--summary", sim_args.summary, "Summary JSON");

  CompareArgs cmp_args;
  auto* compare = app.add_subcommand("compare", "Roll moment sign of the four vehicles");
  compare->add_option("--config", cmp_args.config, "Run configuration file")->required();
  compare->add_option("--twist-deg", cmp_args.twist_deg, "Differential twist, degrees");
  compare->add_option("--out", cmp_args.out, "Table as CSV");

  SweepArgs sw_args;
  auto* sweep = app.add_subcommand("sweep", "Cycle-averaged moments over a parameter range");
  sweep->add_option("--config", sw_args.config, "Run configuration file")->required();
  sweep->add_option("--param", sw_args.param, "psi_amp_deg, psi_mid_deg, phi_mid_deg, phase_lag_deg, "
                                              "u_cruise_mps, h_com_m or freq_hz")->required();
  sweep->add_option("--from", sw_args.from, "First value")->required();
  sweep->add_option("--to", sw_args.to, "Last value")->required();
  sweep->add_option("--steps", sw_args.steps, "Number of values (>= 2)")->required();
  sweep->add_option("--twist-deg", sw_args.twist_deg, "Differential twist, degrees");
  sweep->add_option("--out", sw_args.out, "CSV; a .gp plot script is written next to it");

  MStaticArgs ms_args;
  auto* mstatic = app.add_subcommand("mstatic", "Folded-wing snapshot at peak downstroke rate");
  mstatic->add_option("--config", ms_args.config, "Run configuration file")->required();
  mstatic->add_option("--twist-deg", ms_args.twist_deg, "Differential twist, degrees");
  mstatic->add_option("--psi-deg", ms_args.psi_deg, "Fold angle, degrees");

  LinkageArgs lk_args;
  auto* link = app.add_subcommand("linkage", "Four-bar position analysis");
  link->add_option("--a", lk_args.a, "Crank length")->required();
  link->add_option("--b", lk_args.b, "Coupler length")->required();
  link->add_option("--c", lk_args.c, "Rocker length")->required();
  link->add_option("--d", lk_args.d, "Ground length")->required();
  link->add_option("--theta2-deg", lk_args.theta2_deg, "Crank angle, degrees")->required();
  link->add_option("--branch", lk_args.branch, "open or crossed");

  RollArgs roll_args;
  auto* roll = app.add_subcommand("roll", "Roll response to a square-wave command, written as a log");
  roll->add_option("--config", roll_args.config, "Run configuration file")->required();
  roll->add_option("--twist-deg", roll_args.twist_deg, "Square-wave amplitude, degrees");
  roll->add_option("--period", roll_args.period_s, "Square-wave period, s");
  roll->add_option("--duration", roll_args.duration_s, "Simulated time, s");
  roll->add_option("--out", roll_args.out, "Log CSV (t,ctrl,roll_deg)");

  CorrelateArgs cor_args;
  auto* correlate = app.add_subcommand("correlate", "Control to roll-rate lag correlation of a log");
  correlate->add_option("--log", cor_args.log, "Log CSV (t,ctrl,roll_deg)")->required();
  correlate->add_option("--max-lag", cor_args.max_lag, "Largest lag scanned, s");
  correlate->add_option("--resample-dt", cor_args.resample_dt, "Resampling step, s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim_args, std::cout);
    if (*compare) return run_compare(cmp_args, std::cout);
    if (*sweep) return run_sweep(sw_args, std::cout);
    if (*mstatic) return run_mstatic(ms_args, std::cout, std::cerr);
    if (*link) return run_linkage(lk_args, std::cout);
    if (*roll) return run_roll(roll_args, std::cout);
    if (*correlate) return run_correlate(cor_args, std::cout);
  } catch (const orni::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
