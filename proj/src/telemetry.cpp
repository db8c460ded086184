#include "orni/telemetry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "orni/errors.hpp"
#include "orni/frames.hpp"

namespace orni::telemetry {

namespace {

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

[[noreturn]] void row_error(std::size_t row, std::size_t line, const std::string& msg) {
  throw DataError("row " + std::to_string(row) + " (line " + std::to_string(line) + "): " + msg);
}

std::vector<double> resample(std::span<const LogRecord> rec, double LogRecord::*field, double t0, double dt,
                             std::size_t n) {
  std::vector<double> out(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    while (j + 2 < rec.size() && rec[j + 1].t <= t) ++j;
    const LogRecord& a = rec[j];
    const LogRecord& b = rec[j + 1];
    const double span = b.t - a.t;
    const double w = span > 0.0 ? std::clamp((t - a.t) / span, 0.0, 1.0) : 1.0;
    out[k] = a.*field + w * (b.*field - a.*field);
  }
  return out;
}

// NaN when either channel has zero variance over the window.
double pearson(const double* x, const double* y, std::size_t n) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nan("");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

std::vector<LogRecord> parse_log(std::istream& in) {
  std::vector<LogRecord> out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != kLogHeader) {
        throw DataError("line 1: missing header, expected '" + std::string(kLogHeader) + "'");
      }
      have_header = true;
      continue;
    }
    const std::size_t row = out.size() + 1;
    const std::string_view sv(line);
    const auto c1 = sv.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : sv.find(',', c1 + 1);
    if (c2 == std::string_view::npos || sv.find(',', c2 + 1) != std::string_view::npos) {
      row_error(row, line_no, "expected 3 comma-separated fields");
    }
    LogRecord r;
    if (!parse_number(sv.substr(0, c1), r.t)) row_error(row, line_no, "bad t value");
    if (!parse_number(sv.substr(c1 + 1, c2 - c1 - 1), r.ctrl)) row_error(row, line_no, "bad ctrl value");
    if (!parse_number(sv.substr(c2 + 1), r.roll_deg)) row_error(row, line_no, "bad roll_deg value");
    if (std::abs(r.ctrl) > 1.0) row_error(row, line_no, "ctrl outside [-1, 1]");
    if (!out.empty() && r.t < out.back().t) row_error(row, line_no, "non-monotone t");
    out.push_back(r);
  }
  if (line_no == 0) throw DataError("empty log");
  if (out.empty()) throw DataError("empty log: header without data rows");
  return out;
}

std::vector<LogRecord> parse_log(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_log(in);
}

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::positive: return "+";
    case Sign::negative: return "-";
    case Sign::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

CorrelationReport correlate(std::span<const LogRecord> records, double max_lag, double resample_dt) {
  if (!(resample_dt > 0.0)) throw std::invalid_argument("correlate: resample_dt must be > 0");
  if (!(max_lag >= 0.0)) throw std::invalid_argument("correlate: max_lag must be >= 0");
  if (records.size() < 2) throw DataError("correlate: need at least 2 records");
  const double t0 = records.front().t;
  const double duration = records.back().t - t0;
  if (!(duration > 4.0 * max_lag)) {
    throw DataError("correlate: insufficient duration (log must span more than 4 x max_lag)");
  }

  const auto n = static_cast<std::size_t>(std::floor(duration / resample_dt + 1e-9)) + 1;
  CorrelationReport rep;
  if (n < 3) return rep;
  const std::vector<double> ctrl = resample(records, &LogRecord::ctrl, t0, resample_dt, n);
  const std::vector<double> roll = resample(records, &LogRecord::roll_deg, t0, resample_dt, n);
  std::vector<double> rate(n);
  rate[0] = (roll[1] - roll[0]) / resample_dt;
  rate[n - 1] = (roll[n - 1] - roll[n - 2]) / resample_dt;
  for (std::size_t i = 1; i + 1 < n; ++i) rate[i] = (roll[i + 1] - roll[i - 1]) / (2.0 * resample_dt);

  const auto max_k = std::min(static_cast<std::size_t>(std::llround(max_lag / resample_dt)), n - 2);
  bool found = false;
  for (std::size_t k = 0; k <= max_k; ++k) {
    const std::size_t m = n - k;
    const double r = pearson(ctrl.data(), rate.data() + k, m);
    if (std::isnan(r)) continue;
    if (!found || std::abs(r) > std::abs(rep.pearson_r)) {
      found = true;
      rep.pearson_r = r;
      rep.best_lag = static_cast<double>(k) * resample_dt;
      rep.n_samples = m;
    }
  }
  if (!found) {
    rep.n_samples = n;
    return rep;
  }
  if (std::abs(rep.pearson_r) >= kMinAbsR && rep.n_samples >= kMinSamples) {
    rep.sign = rep.pearson_r > 0.0 ? Sign::positive : Sign::negative;
  }
  return rep;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string synth_log(std::span<const sim::RollRow> rows) {
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max(scale, std::abs(r.delta_a));
  std::string out(kLogHeader);
  out += '\n';
  for (const auto& r : rows) {
    const double ctrl = scale > 0.0 ? r.delta_a / scale : 0.0;
    out += format_double(r.t);
    out += ',';
    out += format_double(ctrl);
    out += ',';
    out += format_double(rad_to_deg(r.roll));
    out += '\n';
  }
  return out;
}

}  // namespace orni::telemetry
