#include "orni/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "orni/errors.hpp"

namespace orni::sim {

namespace {

// Runs fn(i) for i in [0, n) on a small worker pool. Results are written by
// index, so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

FlapAngles angles_at(const VehicleConfig& cfg, double t) {
  if (cfg.variant == Variant::plane) return {cfg.drive.phi_mid, cfg.drive.psi_mid, 0.0, 0.0};
  return flap_angles(cfg.drive, t);
}

std::vector<StripState> strips_at(const VehicleConfig& cfg, const TwistCommand& twist, const FlapAngles& ang,
                                  double roll_rate) {
  return make_strips(panel_poses(cfg.geom, ang, twist, cfg.wing_incidence), cfg.geom, {}, cfg.u_cruise,
                     {roll_rate, 0.0, 0.0});
}

double delta_a_of(const TwistCommand& twist) { return 0.5 * (twist.delta_R - twist.delta_L); }

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::plane: return "plane";
    case Variant::flapper_flat_hover: return "flapper_flat_hover";
    case Variant::flapper_flat_cruise: return "flapper_flat_cruise";
    case Variant::flapper_articulated: return "flapper_articulated";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : kAllVariants) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

void VehicleConfig::validate() const {
  geom.validate();
  drive.validate();
  aero.validate();
  if (!(u_cruise >= 0.0)) throw ConfigError("vehicle: u_cruise must be >= 0");
  if (!(std::abs(wing_incidence) < kPi / 2.0)) throw ConfigError("vehicle: |wing_incidence| must be below 90 deg");
  if (!(i_xx > 0.0)) throw ConfigError("vehicle: i_xx must be > 0");
  if (!(roll_damping >= 0.0)) throw ConfigError("vehicle: roll_damping must be >= 0");
  switch (variant) {
    case Variant::plane:
      if (drive.phi_amp != 0.0 || drive.psi_amp != 0.0) {
        throw ConfigError("vehicle: plane requires zero flap and fold amplitudes");
      }
      if (!(u_cruise > 0.0)) throw ConfigError("vehicle: plane requires u_cruise > 0");
      break;
    case Variant::flapper_flat_hover:
    case Variant::flapper_flat_cruise:
      if (drive.psi_mid != 0.0 || drive.psi_amp != 0.0) {
        throw ConfigError("vehicle: flat-wing flapper requires psi_mid = psi_amp = 0");
      }
      if (variant == Variant::flapper_flat_hover && u_cruise != 0.0) {
        throw ConfigError("vehicle: flapper_flat_hover requires u_cruise = 0");
      }
      if (variant == Variant::flapper_flat_cruise && !(u_cruise > 0.0)) {
        throw ConfigError("vehicle: flapper_flat_cruise requires u_cruise > 0");
      }
      break;
    case Variant::flapper_articulated:
      if (!(drive.psi_amp > 0.0)) throw ConfigError("vehicle: flapper_articulated requires psi_amp > 0");
      break;
  }
}

double VehicleConfig::reference_speed() const {
  return std::max(u_cruise, 2.0 * kPi * drive.freq_hz * geom.semi_span());
}

double VehicleConfig::force_scale() const {
  const double v = reference_speed();
  return 0.5 * aero.rho * v * v * geom.total_area();
}

double VehicleConfig::moment_scale() const { return force_scale() * geom.semi_span(); }

VehicleConfig variant_config(const VehicleConfig& base, Variant v) {
  VehicleConfig cfg = base;
  cfg.variant = v;
  switch (v) {
    case Variant::plane:
      cfg.drive.phi_mid = cfg.drive.phi_amp = 0.0;
      cfg.drive.psi_mid = cfg.drive.psi_amp = 0.0;
      break;
    case Variant::flapper_flat_cruise:
      cfg.drive.psi_mid = cfg.drive.psi_amp = 0.0;
      break;
    case Variant::flapper_flat_hover:
      cfg.drive.psi_mid = cfg.drive.psi_amp = 0.0;
      cfg.drive.downstroke_fraction = kHoverDownstrokeFraction;
      cfg.u_cruise = 0.0;
      break;
    case Variant::flapper_articulated:
      break;
  }
  return cfg;
}

void SimSettings::validate(double period) const {
  if (!(dt > 0.0 && dt <= period / 200.0 * (1.0 + 1e-12))) {
    throw ConfigError("sim: dt must be > 0 and at most period/200");
  }
  if (n_cycles < 2) throw ConfigError("sim: n_cycles must be >= 2");
  if (skip_cycles < 0 || skip_cycles >= n_cycles) {
    throw ConfigError("sim: skip_cycles must satisfy 0 <= skip_cycles < n_cycles");
  }
}

Wrench tethered_wrench(const VehicleConfig& cfg, const TwistCommand& twist, double t, double roll_rate) {
  const auto strips = strips_at(cfg, twist, angles_at(cfg, t), roll_rate);
  return total_wrench(strips, cfg.aero);
}

TimeSeries simulate_tethered(const VehicleConfig& cfg, const TwistCommand& twist, const SimSettings& settings) {
  cfg.validate();
  twist.validate();
  const double period = cfg.drive.period();
  settings.validate(period);

  const auto steps = static_cast<std::size_t>(std::llround(settings.n_cycles * period / settings.dt));
  TimeSeries ts;
  ts.dt = settings.dt;
  ts.rows.reserve(steps);
  LoadEvaluator eval(cfg.aero);
  const double delta_a = delta_a_of(twist);

  std::optional<Wrench> static_wrench;
  if (cfg.variant == Variant::plane) static_wrench = eval.wrench(strips_at(cfg, twist, angles_at(cfg, 0.0), 0.0));

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * settings.dt;
    const FlapAngles ang = angles_at(cfg, t);
    const Wrench w = static_wrench ? *static_wrench : eval.wrench(strips_at(cfg, twist, ang, 0.0));
    ts.rows.push_back({t, ang.phi, ang.psi, delta_a, w.force, w.moment});
  }
  return ts;
}

CycleAverage cycle_average(const TimeSeries& ts, double freq_hz, int skip_cycles) {
  if (!(freq_hz > 0.0) || skip_cycles < 0 || !(ts.dt > 0.0)) {
    throw std::invalid_argument("cycle_average: invalid frequency, skip or step");
  }
  const double period = 1.0 / freq_hz;
  const double covered = static_cast<double>(ts.rows.size()) * ts.dt;
  const double start = skip_cycles * period;
  const int cycles = static_cast<int>(std::floor((covered - start) / period + 1e-9));
  if (cycles < 1) {
    throw DataError("cycle_average: series covers fewer than skip_cycles + 1 full periods");
  }
  const double end = start + cycles * period;

  CycleAverage avg;
  std::size_t count = 0;
  for (const TimeRow& r : ts.rows) {
    if (r.t < start || r.t >= end) continue;
    avg.L_bar += r.moment.x;
    avg.M_bar += r.moment.y;
    avg.N_bar += r.moment.z;
    avg.thrust_bar += r.force.x;
    avg.side_bar += r.force.y;
    avg.lift_bar -= r.force.z;
    ++count;
  }
  if (count == 0) throw DataError("cycle_average: no samples inside the averaging window");
  const double inv = 1.0 / static_cast<double>(count);
  avg.L_bar *= inv;
  avg.M_bar *= inv;
  avg.N_bar *= inv;
  avg.thrust_bar *= inv;
  avg.side_bar *= inv;
  avg.lift_bar *= inv;
  avg.cycles_used = cycles;
  return avg;
}

CycleAverage run_average(const VehicleConfig& cfg, double delta, const SimSettings& settings) {
  const TimeSeries ts = simulate_tethered(cfg, TwistCommand::differential(delta), settings);
  return cycle_average(ts, cfg.drive.freq_hz, settings.skip_cycles);
}

int classify_sign(double value, double noise_floor) {
  if (std::abs(value) <= 10.0 * noise_floor) return 0;
  return value > 0.0 ? 1 : -1;
}

std::vector<CompareRow> compare_configs(const VehicleConfig& base, double delta, const SimSettings& settings) {
  std::vector<CompareRow> rows(kAllVariants.size());
  std::vector<double> floors(kAllVariants.size());
  parallel_for(2 * kAllVariants.size(), [&](std::size_t job) {
    const std::size_t k = job / 2;
    const VehicleConfig cfg = variant_config(base, kAllVariants[k]);
    if (job % 2 == 0) {
      rows[k].variant = kAllVariants[k];
      rows[k].L_bar = run_average(cfg, delta, settings).L_bar;
    } else {
      floors[k] = std::max(std::abs(run_average(cfg, 0.0, settings).L_bar), 1e-12 * cfg.moment_scale());
    }
  });
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].noise_floor = floors[k];
    rows[k].sign = classify_sign(rows[k].L_bar, floors[k]);
  }
  return rows;
}

MStaticInput downstroke_snapshot(const VehicleConfig& cfg, double delta) {
  MStaticInput in;
  in.delta = delta;
  in.phi = cfg.drive.phi_mid;
  in.psi = kPi / 2.0;
  in.phi_dot = -2.0 * kPi * cfg.drive.freq_hz * cfg.drive.phi_amp * (0.5 / cfg.drive.downstroke_fraction);
  in.psi_dot = 0.0;
  return in;
}

MStaticReport m_static_oracle(const VehicleConfig& cfg, const MStaticInput& in) {
  cfg.geom.validate();
  cfg.aero.validate();
  const FlapAngles ang{in.phi, in.psi, in.phi_dot, in.psi_dot};
  const std::size_t ni = static_cast<std::size_t>(cfg.geom.strips_inner);
  const std::size_t no = static_cast<std::size_t>(cfg.geom.strips_outer);
  const std::array<std::size_t, 5> bounds{0, ni, ni + no, 2 * ni + no, 2 * (ni + no)};

  auto panel_loads = [&](double delta) {
    const auto strips = strips_at(cfg, TwistCommand::differential(delta), ang, 0.0);
    return strip_loads(strips, cfg.aero);
  };

  const kernels::LoadBatch loads = panel_loads(in.delta);
  MStaticReport rep;
  rep.total = sum_loads(loads, 0, loads.size());
  constexpr std::array<Side, 4> sides{Side::right, Side::right, Side::left, Side::left};
  constexpr std::array<Section, 4> sections{Section::inner, Section::outer, Section::inner, Section::outer};
  for (std::size_t k = 0; k < 4; ++k) {
    const Wrench w = sum_loads(loads, bounds[k], bounds[k + 1]);
    rep.panels[k] = {sides[k], sections[k], w.force, w.moment};
  }
  rep.outer_fy_right = rep.panels[1].force.y;
  rep.outer_fy_left = rep.panels[3].force.y;

  const kernels::LoadBatch neutral = panel_loads(0.0);
  rep.outer_dfy_right = rep.outer_fy_right - sum_loads(neutral, bounds[1], bounds[2]).force.y;
  rep.outer_dfy_left = rep.outer_fy_left - sum_loads(neutral, bounds[3], bounds[4]).force.y;
  rep.common_mode = (rep.outer_fy_right > 0.0 && rep.outer_fy_left > 0.0) ||
                    (rep.outer_fy_right < 0.0 && rep.outer_fy_left < 0.0);
  return rep;
}

ControlSchedule::ControlSchedule(std::vector<Step> steps) : steps_(std::move(steps)) {
  if (!std::is_sorted(steps_.begin(), steps_.end(), [](const Step& a, const Step& b) { return a.t < b.t; })) {
    throw std::invalid_argument("ControlSchedule: breakpoints must be sorted by time");
  }
}

ControlSchedule ControlSchedule::square_wave(double amplitude, double period, double duration, double t0) {
  if (!(period > 0.0)) throw std::invalid_argument("square_wave: period must be > 0");
  std::vector<Step> steps;
  const double half = 0.5 * period;
  for (long k = 0; t0 + k * half <= duration; ++k) {
    steps.push_back({t0 + k * half, k % 2 == 0 ? amplitude : -amplitude});
  }
  return ControlSchedule(std::move(steps));
}

double ControlSchedule::operator()(double t) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t, [](double v, const Step& s) { return v < s.t; });
  if (it == steps_.begin()) return 0.0;
  return std::prev(it)->delta;
}

std::vector<RollRow> roll_response(const RollMomentFn& moment, double i_xx, double damping,
                                   const ControlSchedule& schedule, double dt, double duration) {
  if (!(i_xx > 0.0)) throw ConfigError("roll_response: i_xx must be > 0");
  if (!(damping >= 0.0)) throw ConfigError("roll_response: roll damping must be >= 0");
  if (!(dt > 0.0 && duration >= 0.0)) throw std::invalid_argument("roll_response: dt > 0, duration >= 0");

  auto rate_dot = [&](double t, double p) { return (moment(t, p, schedule(t)) - damping * p) / i_xx; };

  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  std::vector<RollRow> rows;
  rows.reserve(steps + 1);
  double p = 0.0;
  double roll = 0.0;
  rows.push_back({0.0, schedule(0.0), p, roll});
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double k1 = rate_dot(t, p);
    const double p2 = p + 0.5 * dt * k1;
    const double k2 = rate_dot(t + 0.5 * dt, p2);
    const double p3 = p + 0.5 * dt * k2;
    const double k3 = rate_dot(t + 0.5 * dt, p3);
    const double p4 = p + dt * k3;
    const double k4 = rate_dot(t + dt, p4);
    roll += dt / 6.0 * (p + 2.0 * p2 + 2.0 * p3 + p4);
    p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t_next = static_cast<double>(k + 1) * dt;
    rows.push_back({t_next, schedule(t_next), p, roll});
  }
  return rows;
}

std::vector<RollRow> roll_response(const VehicleConfig& cfg, const ControlSchedule& schedule,
                                   const SimSettings& settings) {
  cfg.validate();
  settings.validate(cfg.drive.period());
  LoadEvaluator eval(cfg.aero);
  RollMomentFn moment = [&](double t, double p, double delta) {
    return eval.wrench(strips_at(cfg, TwistCommand::differential(delta), angles_at(cfg, t), p)).moment.x;
  };
  return roll_response(moment, cfg.i_xx, cfg.roll_damping, schedule, settings.dt,
                       settings.n_cycles * cfg.drive.period());
}

namespace {

struct SweepName {
  SweepParam param;
  std::string_view bare;
  std::string_view cli;
};

constexpr std::array<SweepName, 7> kSweepNames{{
    {SweepParam::psi_amp, "psi_amp", "psi_amp_deg"},
    {SweepParam::psi_mid, "psi_mid", "psi_mid_deg"},
    {SweepParam::phi_mid, "phi_mid", "phi_mid_deg"},
    {SweepParam::phase_lag, "phase_lag", "phase_lag_deg"},
    {SweepParam::u_cruise, "u_cruise", "u_cruise_mps"},
    {SweepParam::h_com, "h_com", "h_com_m"},
    {SweepParam::freq_hz, "freq_hz", "freq_hz"},
}};

}  // namespace

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
  for (const auto& n : kSweepNames) {
    if (name == n.bare || name == n.cli) return n.param;
  }
  return std::nullopt;
}

std::string_view to_string(SweepParam p) {
  for (const auto& n : kSweepNames) {
    if (n.param == p) return n.cli;
  }
  return "unknown";
}

bool sweep_param_is_angle(SweepParam p) {
  return p == SweepParam::psi_amp || p == SweepParam::psi_mid || p == SweepParam::phi_mid ||
         p == SweepParam::phase_lag;
}

VehicleConfig apply_sweep_param(const VehicleConfig& cfg, SweepParam param, double value) {
  VehicleConfig out = cfg;
  switch (param) {
    case SweepParam::psi_amp: out.drive.psi_amp = value; break;
    case SweepParam::psi_mid: out.drive.psi_mid = value; break;
    case SweepParam::phi_mid: out.drive.phi_mid = value; break;
    case SweepParam::phase_lag: out.drive.phase_lag = value; break;
    case SweepParam::u_cruise: out.u_cruise = value; break;
    case SweepParam::h_com: out.geom.h_com = value; break;
    case SweepParam::freq_hz: out.drive.freq_hz = value; break;
  }
  if (out.variant == Variant::flapper_articulated && out.drive.psi_amp == 0.0 && out.drive.psi_mid == 0.0) {
    out.variant = out.u_cruise > 0.0 ? Variant::flapper_flat_cruise : Variant::flapper_flat_hover;
  }
  return out;
}

std::vector<SweepRow> sweep(const VehicleConfig& cfg, SweepParam param, const std::vector<double>& values,
                            double delta, const SimSettings& settings) {
  std::vector<SweepRow> rows(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const VehicleConfig run_cfg = apply_sweep_param(cfg, param, values[i]);
    SimSettings s = settings;
    if (param == SweepParam::freq_hz) {
      // Keep the same number of samples per period.
      s.dt = settings.dt * cfg.drive.freq_hz / values[i];
    }
    const CycleAverage avg = run_average(run_cfg, delta, s);
    rows[i] = {values[i], avg.L_bar, avg.N_bar, avg.thrust_bar};
  });
  return rows;
}

std::vector<double> sign_crossings(const std::vector<SweepRow>& rows) {
  std::vector<double> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = rows[i - 1].L_bar;
    const double b = rows[i].L_bar;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      out.push_back(rows[i - 1].value + (rows[i].value - rows[i - 1].value) * a / (a - b));
    }
  }
  return out;
}

}  // namespace orni::sim
