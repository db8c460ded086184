#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace orni::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct SimulateArgs {
  std::string config;
  double twist_deg = 0.0;
  std::string out;
  std::string summary;
};

struct CompareArgs {
  std::string config;
  double twist_deg = 0.0;
  std::string out;
};

struct SweepArgs {
  std::string config;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  double twist_deg = 0.0;
  std::string out;
};

struct MStaticArgs {
  std::string config;
  double twist_deg = 0.0;
  double psi_deg = 90.0;
};

struct LinkageArgs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double theta2_deg = 0.0;
  std::string branch = "open";
};

struct RollArgs {
  std::string config;
  double twist_deg = 5.0;
  double period_s = 4.0;
  double duration_s = 16.0;
  std::string out;
};

struct CorrelateArgs {
  std::string log;
  double max_lag = 2.0;
  double resample_dt = 0.02;
};

// Each command writes its report to `out` and returns an exit code; library
// exceptions propagate to the caller for mapping.
int run_simulate(const SimulateArgs& a, std::ostream& out);
int run_compare(const CompareArgs& a, std::ostream& out);
int run_sweep(const SweepArgs& a, std::ostream& out);
int run_mstatic(const MStaticArgs& a, std::ostream& out, std::ostream& err);
int run_linkage(const LinkageArgs& a, std::ostream& out);
int run_roll(const RollArgs& a, std::ostream& out);
int run_correlate(const CorrelateArgs& a, std::ostream& out);

}  // namespace orni::cli
