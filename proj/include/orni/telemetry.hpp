#pragma once

// Flight-log ingestion and control-to-roll-rate lag correlation.
//
// CSV schema: header `t,ctrl,roll_deg`, one record per line, LF or CR-LF on
// input, LF on output. ctrl > 0 is left outer wing up / right outer wing down;
// roll_deg > 0 is right wing down.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orni/sim.hpp"

namespace orni::telemetry {

inline constexpr std::string_view kLogHeader = "t,ctrl,roll_deg";

struct LogRecord {
  double t = 0.0;
  double ctrl = 0.0;
  double roll_deg = 0.0;
};

/// Throws DataError naming the data row and file line on any defect: empty
/// input, missing header, header only, malformed row, non-finite value,
/// |ctrl| > 1 or decreasing t.
std::vector<LogRecord> parse_log(std::istream& in);
std::vector<LogRecord> parse_log(std::string_view text);

enum class Sign { positive, negative, indeterminate };
std::string_view to_string(Sign s);

struct CorrelationReport {
  double best_lag = 0.0;
  double pearson_r = 0.0;
  Sign sign = Sign::indeterminate;
  std::size_t n_samples = 0;
};

inline constexpr double kDefaultMaxLag = 2.0;
inline constexpr double kDefaultResampleDt = 0.02;
inline constexpr double kMinAbsR = 0.2;
inline constexpr std::size_t kMinSamples = 32;

/// Pearson r of ctrl(t) against d(roll)/dt(t + lag), lag in [0, max_lag],
/// after linear resampling to resample_dt. Throws DataError when the log spans
/// no more than 4 max_lag, std::invalid_argument for non-positive resample_dt
/// or negative max_lag.
CorrelationReport correlate(std::span<const LogRecord> records, double max_lag = kDefaultMaxLag,
                            double resample_dt = kDefaultResampleDt);

/// Log text for a roll-response series; ctrl is delta_a scaled by its largest
/// magnitude (0 when the command is identically zero).
std::string synth_log(std::span<const sim::RollRow> rows);

/// Shortest decimal text that reads back to exactly the same double.
std::string format_double(double v);

}  // namespace orni::telemetry
