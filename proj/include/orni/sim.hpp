#pragma once

// Tethered wrench sampling, cycle averaging, the four-vehicle comparison, the
// extreme-fold snapshot, parameter sweeps and the single-axis roll response.

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "orni/aero.hpp"
#include "orni/frames.hpp"
#include "orni/wing_kinematics.hpp"

namespace orni::sim {

enum class Variant { plane, flapper_flat_hover, flapper_flat_cruise, flapper_articulated };

inline constexpr std::array<Variant, 4> kAllVariants{Variant::plane, Variant::flapper_flat_cruise,
                                                     Variant::flapper_flat_hover,
                                                     Variant::flapper_articulated};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view s);

/// Downstroke fraction used for the hovering flat-wing member of a
/// comparison family.
inline constexpr double kHoverDownstrokeFraction = 0.6;

/// Defaults are the shipped articulated configuration.
struct VehicleConfig {
  Variant variant = Variant::flapper_articulated;
  WingGeometry geom{};
  FlapDrive drive{4.0,
                  deg_to_rad(15.0),
                  deg_to_rad(37.0),
                  0.0,
                  deg_to_rad(80.0),
                  deg_to_rad(-45.0),
                  0.35};
  AeroParams aero{};
  double u_cruise = 2.0;
  double wing_incidence = deg_to_rad(18.0);
  double i_xx = 0.01;
  double roll_damping = 0.0;

  /// Throws ConfigError on any module or variant invariant violation.
  void validate() const;

  /// v_ref = max(U, 2 pi f span)
  double reference_speed() const;
  /// (rho/2) v_ref^2 S_total
  double force_scale() const;
  /// (rho/2) v_ref^2 S_total span
  double moment_scale() const;
};

/// Member of the comparison family sharing the base geometry, aero and speed.
VehicleConfig variant_config(const VehicleConfig& base, Variant v);

struct SimSettings {
  double dt = 0.000625;
  int n_cycles = 4;
  int skip_cycles = 1;

  void validate(double period) const;
};

struct TimeRow {
  double t = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double delta_a = 0.0;
  Vec3 force;
  Vec3 moment;
};

/// Rows sit at cell midpoints t_i = (i + 1/2) dt.
struct TimeSeries {
  double dt = 0.0;
  std::vector<TimeRow> rows;
};

struct CycleAverage {
  double L_bar = 0.0;  ///< mean Mx
  double M_bar = 0.0;  ///< mean My
  double N_bar = 0.0;  ///< mean Mz
  double thrust_bar = 0.0;  ///< mean Fx
  double side_bar = 0.0;    ///< mean Fy
  double lift_bar = 0.0;    ///< mean -Fz
  int cycles_used = 0;
};

/// Wrench at one instant with the body held fixed (optionally rolling at
/// body_rate about x).
Wrench tethered_wrench(const VehicleConfig& cfg, const TwistCommand& twist, double t, double roll_rate = 0.0);

TimeSeries simulate_tethered(const VehicleConfig& cfg, const TwistCommand& twist, const SimSettings& settings);

/// Mean over the largest whole number of periods after skipping `skip_cycles`.
/// Throws DataError when fewer than skip + 1 periods are available.
CycleAverage cycle_average(const TimeSeries& ts, double freq_hz, int skip_cycles);

/// Convenience: simulate + average with the differential command delta.
CycleAverage run_average(const VehicleConfig& cfg, double delta, const SimSettings& settings);

struct CompareRow {
  Variant variant;
  double L_bar = 0.0;
  double noise_floor = 0.0;  ///< |L_bar| at delta = 0, floored at 1e-12 of the moment scale
  int sign = 0;               ///< 0 when |L_bar| <= 10 x noise_floor
};

/// The four vehicles under the same differential command (delta > 0: left
/// trailing edge up, right trailing edge down). Runs may execute concurrently;
/// rows follow kAllVariants.
std::vector<CompareRow> compare_configs(const VehicleConfig& base, double delta, const SimSettings& settings);

/// Sign classification shared by compare and the CLI summary.
int classify_sign(double value, double noise_floor);

struct MStaticInput {
  double delta = 0.0;
  double phi = 0.0;
  double psi = kPi / 2.0;
  double phi_dot = 0.0;
  double psi_dot = 0.0;
};

/// phi at mid-stroke, psi = 90 deg, peak downstroke flap rate, no fold rate.
MStaticInput downstroke_snapshot(const VehicleConfig& cfg, double delta);

struct PanelForce {
  Side side;
  Section section;
  Vec3 force;
  Vec3 moment;
};

struct MStaticReport {
  Wrench total;
  std::array<PanelForce, 4> panels{};  ///< right inner, right outer, left inner, left outer
  double outer_fy_right = 0.0;
  double outer_fy_left = 0.0;
  /// Change of the outer lateral forces relative to the same snapshot at delta = 0.
  double outer_dfy_right = 0.0;
  double outer_dfy_left = 0.0;
  /// Both outer lateral components strictly share one sign.
  bool common_mode = false;
};

/// Extreme-fold snapshot: single wrench evaluation with the outer panels
/// folded to psi (90 deg: the capital-M pose).
MStaticReport m_static_oracle(const VehicleConfig& cfg, const MStaticInput& in);

/// Piecewise-constant differential command: value of the last breakpoint at
/// or before t, zero before the first.
class ControlSchedule {
 public:
  struct Step {
    double t;
    double delta;
  };
  ControlSchedule() = default;
  explicit ControlSchedule(std::vector<Step> steps);

  static ControlSchedule constant(double delta) { return ControlSchedule({{0.0, delta}}); }
  static ControlSchedule step(double t_step, double delta) { return ControlSchedule({{t_step, delta}}); }
  /// +amplitude for the first half of each period starting at t0, then -amplitude.
  static ControlSchedule square_wave(double amplitude, double period, double duration, double t0 = 0.0);

  double operator()(double t) const;

 private:
  std::vector<Step> steps_;
};

struct RollRow {
  double t = 0.0;
  double delta_a = 0.0;
  double p = 0.0;      ///< roll rate, rad/s
  double roll = 0.0;   ///< roll angle, rad
};

/// Roll moment as a function of (t, roll rate, command).
using RollMomentFn = std::function<double(double t, double p, double delta)>;

/// i_xx p' = Mx(t, p, delta(t)) - c p, roll' = p, classic RK4 with step dt,
/// rows at t = k dt from 0 to duration.
std::vector<RollRow> roll_response(const RollMomentFn& moment, double i_xx, double damping,
                                   const ControlSchedule& schedule, double dt, double duration);

/// Aerodynamic roll moment of the tethered wing with body roll rate fed back
/// into the strip velocities; duration = n_cycles periods.
std::vector<RollRow> roll_response(const VehicleConfig& cfg, const ControlSchedule& schedule,
                                   const SimSettings& settings);

enum class SweepParam { psi_amp, psi_mid, phi_mid, phase_lag, u_cruise, h_com, freq_hz };

/// Accepts the bare names and the CLI spellings with unit suffixes
/// (psi_amp_deg, u_cruise_mps, h_com_m, ...).
std::optional<SweepParam> parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam p);
/// True when CLI values for this parameter are in degrees.
bool sweep_param_is_angle(SweepParam p);

/// Sets the parameter (SI units). A zero-fold articulated vehicle becomes the
/// matching flat-wing variant.
VehicleConfig apply_sweep_param(const VehicleConfig& cfg, SweepParam param, double value);

struct SweepRow {
  double value = 0.0;
  double L_bar = 0.0;
  double N_bar = 0.0;
  double thrust_bar = 0.0;
};

/// Independent runs per value, returned in input order.
std::vector<SweepRow> sweep(const VehicleConfig& cfg, SweepParam param, const std::vector<double>& values,
                            double delta, const SimSettings& settings);

/// Linear-interpolated zero crossings of L_bar between consecutive rows.
std::vector<double> sign_crossings(const std::vector<SweepRow>& rows);

}  // namespace orni::sim
