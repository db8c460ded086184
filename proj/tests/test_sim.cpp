#include <doctest.h>

#include <cmath>
#include <vector>

#include "orni/errors.hpp"
#include "orni/sim.hpp"

using namespace orni;
using namespace orni::sim;

namespace {

SimSettings quick() { return {0.000625, 3, 1}; }

// Hand-rolled wrench for the default articulated vehicle at one instant,
// written from the chain description without the library's pose types.
Vec3 hand_roll_moment_and(const VehicleConfig& c, double delta, double t, Vec3* force_out) {
  const double f = c.drive.freq_hz, dfrac = c.drive.downstroke_fraction;
  double u = t * f - std::floor(t * f);
  double w, wd;
  if (u < dfrac) {
    w = 0.5 * u / dfrac;
    wd = 0.5 / dfrac;
  } else {
    w = 0.5 + 0.5 * (u - dfrac) / (1.0 - dfrac);
    wd = 0.5 / (1.0 - dfrac);
  }
  const double th = 2.0 * kPi * w, thd = 2.0 * kPi * wd * f;
  const double phi = c.drive.phi_mid + c.drive.phi_amp * std::cos(th);
  const double phid = -c.drive.phi_amp * std::sin(th) * thd;
  const double psi = c.drive.psi_mid + c.drive.psi_amp * std::cos(th + c.drive.phase_lag);
  const double psid = -c.drive.psi_amp * std::sin(th + c.drive.phase_lag) * thd;

  const auto& g = c.geom;
  const double k = 0.5 * c.aero.rho * c.aero.c_n0;
  Vec3 force, moment;
  for (int side = 0; side < 2; ++side) {
    const double sy = side == 0 ? 1.0 : -1.0;  // mirror factor on y
    const double d = side == 0 ? delta : -delta;
    for (int sec = 0; sec < 2; ++sec) {
      const int n = sec == 0 ? g.strips_inner : g.strips_outer;
      const double span = sec == 0 ? g.inner_span : g.outer_span;
      const double chord = sec == 0 ? g.inner_chord : g.outer_chord;
      const double pitch = c.wing_incidence + (sec == 0 ? 0.0 : d);
      const double roll = sec == 0 ? phi : phi + psi;  // tip-up angle of the panel
      for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) / n * span;
        // Right-wing position: tip up means -z.
        double y = g.shoulder_y, z = -g.h_com;
        double vy = 0.0, vz = 0.0;
        if (sec == 0) {
          y += s * std::cos(phi);
          z -= s * std::sin(phi);
          vy = -s * std::sin(phi) * phid;
          vz = -s * std::cos(phi) * phid;
        } else {
          y += g.inner_span * std::cos(phi) + s * std::cos(phi + psi);
          z -= g.inner_span * std::sin(phi) + s * std::sin(phi + psi);
          vy = -g.inner_span * std::sin(phi) * phid - s * std::sin(phi + psi) * (phid + psid);
          vz = -g.inner_span * std::cos(phi) * phid - s * std::cos(phi + psi) * (phid + psid);
        }
        // Normal: Ry(pitch) z = (sin p, 0, cos p), then the panel roll.
        const double nx = std::sin(pitch);
        const double ny = std::cos(pitch) * std::sin(roll);
        const double nz = std::cos(pitch) * std::cos(roll);
        const Vec3 r{0.0, sy * y, z};
        const Vec3 nrm{nx, sy * ny, nz};
        const Vec3 v{c.u_cruise, sy * vy, vz};
        const double vn = dot(v, nrm);
        const Vec3 fi = nrm * (-k * (span / n) * chord * vn * std::abs(vn));
        force += fi;
        moment += cross(r, fi);
      }
    }
  }
  if (force_out) *force_out = force;
  return moment;
}

}  // namespace

TEST_CASE("default vehicle is a valid articulated configuration") {
  const VehicleConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.variant == Variant::flapper_articulated);
  for (Variant v : kAllVariants) CHECK_NOTHROW(variant_config(c, v).validate());
  CHECK(variant_config(c, Variant::flapper_flat_hover).drive.downstroke_fraction == kHoverDownstrokeFraction);
  CHECK(parse_variant("plane") == Variant::plane);
  CHECK_FALSE(parse_variant("glider").has_value());
}

TEST_CASE("variant invariants are enforced") {
  VehicleConfig c;
  c.variant = Variant::plane;
  CHECK_THROWS_AS(c.validate(), ConfigError);  // amplitudes nonzero
  c = variant_config(VehicleConfig{}, Variant::flapper_flat_cruise);
  c.drive.psi_amp = 0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = variant_config(VehicleConfig{}, Variant::flapper_flat_hover);
  c.u_cruise = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = VehicleConfig{};
  c.drive.psi_amp = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS((SimSettings{0.01, 4, 1}.validate(0.25)), ConfigError);
  CHECK_THROWS_AS((SimSettings{0.001, 1, 0}.validate(0.25)), ConfigError);
  CHECK_THROWS_AS((SimSettings{0.001, 3, 3}.validate(0.25)), ConfigError);
}

TEST_CASE("one time step against a hand-written evaluation") {
  const VehicleConfig c;
  const double delta = deg_to_rad(5.0);
  const TimeSeries ts = simulate_tethered(c, TwistCommand::differential(delta), quick());
  for (std::size_t i : {std::size_t{0}, std::size_t{97}, std::size_t{140}, std::size_t{333}, ts.rows.size() - 1}) {
    const TimeRow& r = ts.rows[i];
    CHECK(r.t == (static_cast<double>(i) + 0.5) * ts.dt);
    Vec3 f;
    const Vec3 m = hand_roll_moment_and(c, delta, r.t, &f);
    const double scale = c.moment_scale();
    CHECK(norm(r.moment - m) < 1e-12 * scale);
    CHECK(norm(r.force - f) < 1e-12 * c.force_scale());
    CHECK(r.delta_a == delta);
  }
}

TEST_CASE("symmetric command leaves no roll, yaw or side force in any row") {
  for (Variant v : kAllVariants) {
    const VehicleConfig c = variant_config(VehicleConfig{}, v);
    const TimeSeries ts = simulate_tethered(c, {}, quick());
    double worst_m = 0.0, worst_f = 0.0;
    for (const auto& r : ts.rows) {
      worst_m = std::max({worst_m, std::abs(r.moment.x), std::abs(r.moment.z)});
      worst_f = std::max(worst_f, std::abs(r.force.y));
    }
    CHECK(worst_m < 1e-12 * c.moment_scale());
    CHECK(worst_f < 1e-12 * c.force_scale());
  }
}

TEST_CASE("symmetric hover strokes cancel over a cycle") {
  VehicleConfig c = variant_config(VehicleConfig{}, Variant::flapper_flat_hover);
  c.drive.downstroke_fraction = 0.5;
  c.drive.phi_mid = 0.0;
  for (const TwistCommand& tw : {TwistCommand{}, TwistCommand::differential(0.1), TwistCommand{0.15, 0.15}}) {
    const TimeSeries ts = simulate_tethered(c, tw, quick());
    const CycleAverage a = cycle_average(ts, c.drive.freq_hz, 1);
    const double ms = c.moment_scale(), fs = c.force_scale();
    CHECK(std::abs(a.L_bar) < 1e-10 * ms);
    CHECK(std::abs(a.M_bar) < 1e-10 * ms);
    CHECK(std::abs(a.N_bar) < 1e-10 * ms);
    CHECK(std::abs(a.thrust_bar) < 1e-10 * fs);
    CHECK(std::abs(a.side_bar) < 1e-10 * fs);
    CHECK(std::abs(a.lift_bar) < 1e-10 * fs);
  }
}

TEST_CASE("cycle average of simple series") {
  TimeSeries ts;
  ts.dt = 0.01;
  for (int i = 0; i < 300; ++i) {
    const double t = (i + 0.5) * ts.dt;
    ts.rows.push_back({t, 0.0, 0.0, 0.0, {2.5, 0.0, -1.0}, {3.0 * std::sin(2.0 * kPi * t), 0.7, 0.0}});
  }
  const CycleAverage a = cycle_average(ts, 1.0, 0);
  CHECK(a.cycles_used == 3);
  CHECK(a.thrust_bar == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(a.lift_bar == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.M_bar == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(std::abs(a.L_bar) < 1e-12 * 3.0);
  CHECK(cycle_average(ts, 1.0, 2).cycles_used == 1);
  CHECK_THROWS_AS(cycle_average(ts, 1.0, 3), DataError);
}

TEST_CASE("runs are bit-reproducible") {
  const VehicleConfig c;
  const auto a = run_average(c, deg_to_rad(5.0), quick());
  const auto b = run_average(c, deg_to_rad(5.0), quick());
  CHECK(a.L_bar == b.L_bar);
  CHECK(a.N_bar == b.N_bar);
  CHECK(a.thrust_bar == b.thrust_bar);
}

TEST_CASE("roll moment is odd in the differential command") {
  const VehicleConfig c;
  for (double deg : {2.0, 5.0, 10.0}) {
    const double p = run_average(c, deg_to_rad(deg), quick()).L_bar;
    const double m = run_average(c, deg_to_rad(-deg), quick()).L_bar;
    CHECK(std::abs(p + m) <= 1e-9 * std::abs(p));
  }
}

TEST_CASE("four-vehicle comparison signs") {
  const auto rows = compare_configs(VehicleConfig{}, deg_to_rad(5.0), quick());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].variant == Variant::plane);
  CHECK(rows[0].sign == -1);
  CHECK(rows[1].sign == -1);
  CHECK(rows[2].sign == -1);
  CHECK(rows[3].variant == Variant::flapper_articulated);
  CHECK(rows[3].sign == 1);
  for (const auto& r : compare_configs(VehicleConfig{}, 0.0, quick())) CHECK(r.sign == 0);
  const auto neg = compare_configs(VehicleConfig{}, deg_to_rad(-5.0), quick());
  for (std::size_t i = 0; i < 4; ++i) CHECK(neg[i].sign == -rows[i].sign);
}

TEST_CASE("sign classification") {
  CHECK(classify_sign(1.0, 0.05) == 1);
  CHECK(classify_sign(-1.0, 0.05) == -1);
  CHECK(classify_sign(0.4, 0.05) == 0);
  CHECK(classify_sign(0.0, 0.0) == 0);
}

TEST_CASE("folded snapshot: mirror pair at zero twist") {
  const VehicleConfig c;
  const MStaticReport r = m_static_oracle(c, downstroke_snapshot(c, 0.0));
  CHECK(r.outer_fy_right == -r.outer_fy_left);
  CHECK(std::abs(r.total.moment.x) < 1e-12 * c.moment_scale());
  CHECK(r.outer_dfy_right == 0.0);
  CHECK_FALSE(r.common_mode);
}

TEST_CASE("folded snapshot: opposite twist mirrors the report") {
  const VehicleConfig c;
  const MStaticReport p = m_static_oracle(c, downstroke_snapshot(c, deg_to_rad(5.0)));
  const MStaticReport m = m_static_oracle(c, downstroke_snapshot(c, deg_to_rad(-5.0)));
  CHECK(std::abs(p.outer_fy_right + m.outer_fy_left) < 1e-14);
  CHECK(std::abs(p.outer_fy_left + m.outer_fy_right) < 1e-14);
  CHECK(std::abs(p.total.moment.x + m.total.moment.x) < 1e-15);
  CHECK(p.total.moment.x > 0.0);
}

TEST_CASE("folded snapshot with one strip per panel") {
  VehicleConfig c;
  c.geom.strips_inner = c.geom.strips_outer = 1;
  c.wing_incidence = 0.0;
  c.u_cruise = 0.0;
  MStaticInput in;
  in.delta = 0.0;
  in.phi = 0.0;
  in.psi = kPi / 2.0;
  in.phi_dot = -10.0;
  const MStaticReport r = m_static_oracle(c, in);
  // Right outer panel: vertical, centroid at (0, y0 + l1, -h - l2/2), normal -y
  // (outer normal rolled by -90 deg about x), moving with v = -phi_dot x x (r - shoulder).
  const auto& g = c.geom;
  const Vec3 centroid{0.0, g.shoulder_y + g.inner_span, -g.h_com - 0.5 * g.outer_span};
  const Vec3 normal{0.0, -1.0, 0.0};
  const Vec3 v = cross({10.0, 0.0, 0.0}, centroid - g.shoulder_offset());
  const double vn = dot(v, normal);
  const Vec3 f = normal * (-0.5 * c.aero.rho * c.aero.c_n0 * g.outer_span * g.outer_chord * vn * std::abs(vn));
  CHECK(norm(r.panels[1].force - f) < 1e-14);
  CHECK(norm(r.panels[1].moment - cross(centroid, f)) < 1e-14);
  // Inner panel: flat, centroid (0, y0 + l1/2, -h), normal +z, v = (0, 0, 10 l1/2).
  const Vec3 ci{0.0, g.shoulder_y + 0.5 * g.inner_span, -g.h_com};
  const double vni = 10.0 * 0.5 * g.inner_span;
  const Vec3 fi{0.0, 0.0, -0.5 * c.aero.rho * c.aero.c_n0 * g.inner_span * g.inner_chord * vni * vni};
  CHECK(norm(r.panels[0].force - fi) < 1e-14);
  CHECK(norm(r.panels[0].moment - cross(ci, fi)) < 1e-14);
}

TEST_CASE("control schedules") {
  const auto s = ControlSchedule::step(1.0, 0.2);
  CHECK(s(0.5) == 0.0);
  CHECK(s(1.0) == 0.2);
  CHECK(s(9.0) == 0.2);
  const auto q = ControlSchedule::square_wave(0.1, 4.0, 10.0);
  CHECK(q(0.0) == 0.1);
  CHECK(q(1.99) == 0.1);
  CHECK(q(2.0) == -0.1);
  CHECK(q(4.5) == 0.1);
  CHECK(ControlSchedule::constant(0.3)(7.0) == 0.3);
  CHECK_THROWS_AS(ControlSchedule({{1.0, 0.0}, {0.5, 0.0}}), std::invalid_argument);
}

TEST_CASE("RK4 reproduces the first-order rate response") {
  const double l0 = 0.02, c = 0.05, ixx = 0.01;
  const double tau = ixx / c;
  const auto rows = roll_response([&](double, double, double) { return l0; }, ixx, c, ControlSchedule::constant(0.0),
                                  0.001, 5.0 * tau);
  const double p_exact = (l0 / c) * (1.0 - std::exp(-5.0));
  CHECK(std::abs(rows.back().t - 5.0 * tau) < 1e-12);
  CHECK(std::abs(rows.back().p - p_exact) <= 1e-6 * p_exact);
  const double roll_exact = (l0 / c) * (5.0 * tau - tau * (1.0 - std::exp(-5.0)));
  CHECK(std::abs(rows.back().roll - roll_exact) <= 1e-6 * roll_exact);
  CHECK_THROWS_AS(roll_response([](double, double, double) { return 0.0; }, 0.0, 0.0, {}, 0.01, 1.0), ConfigError);
}

TEST_CASE("no command, no roll") {
  SimSettings s = quick();
  s.n_cycles = 8;
  const auto rows = roll_response(VehicleConfig{}, ControlSchedule::constant(0.0), s);
  for (const auto& r : rows) CHECK(std::abs(r.roll) < 1e-10);
}

TEST_CASE("step command: articulated rolls right, plane rolls left") {
  SimSettings s = quick();
  s.n_cycles = 12;  // 3 s
  const auto step = ControlSchedule::step(1.0, deg_to_rad(5.0));
  const std::size_t at_step = static_cast<std::size_t>(std::llround(1.0 / s.dt));
  const auto art = roll_response(VehicleConfig{}, step, s);
  const auto pl = roll_response(variant_config(VehicleConfig{}, Variant::plane), step, s);
  CHECK(std::abs(art[at_step].roll) < 1e-10);
  CHECK(art.back().roll > art[at_step].roll);
  CHECK(pl.back().roll < pl[at_step].roll);
  // The rise is sustained: later samples keep climbing at the flap-cycle scale.
  const std::size_t cyc = static_cast<std::size_t>(std::llround(0.25 / s.dt));
  for (std::size_t i = at_step + 2 * cyc; i + cyc < art.size(); i += cyc) {
    CHECK(art[i + cyc].roll > art[i].roll);
    CHECK(pl[i + cyc].roll < pl[i].roll);
  }
}

TEST_CASE("sweep: zero fold reproduces the flat-wing vehicle") {
  const VehicleConfig c;
  const double delta = deg_to_rad(5.0);
  const auto rows = sweep(c, SweepParam::psi_amp, {0.0}, delta, quick());
  const auto flat = run_average(variant_config(c, Variant::flapper_flat_cruise), delta, quick());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].L_bar == flat.L_bar);
  CHECK(rows[0].N_bar == flat.N_bar);
  CHECK(rows[0].thrust_bar == flat.thrust_bar);
}

TEST_CASE("sweep keeps input order") {
  const VehicleConfig c;
  const std::vector<double> v{deg_to_rad(80.0), 0.0, deg_to_rad(40.0)};
  const auto rows = sweep(c, SweepParam::psi_amp, v, deg_to_rad(5.0), quick());
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(rows[i].value == v[i]);
    CHECK(rows[i].L_bar == run_average(apply_sweep_param(c, SweepParam::psi_amp, v[i]), deg_to_rad(5.0), quick()).L_bar);
  }
}

TEST_CASE("roll moment grows with shoulder height") {
  const auto rows = sweep(VehicleConfig{}, SweepParam::h_com, {0.0, 0.05, 0.10}, deg_to_rad(5.0), quick());
  CHECK(std::abs(rows[1].L_bar) > std::abs(rows[0].L_bar));
  CHECK(std::abs(rows[2].L_bar) > std::abs(rows[1].L_bar));
}

TEST_CASE("sweep parameter names and zero crossings") {
  CHECK(parse_sweep_param("psi_amp_deg") == SweepParam::psi_amp);
  CHECK(parse_sweep_param("u_cruise") == SweepParam::u_cruise);
  CHECK(parse_sweep_param("h_com_m") == SweepParam::h_com);
  CHECK_FALSE(parse_sweep_param("span").has_value());
  CHECK(sweep_param_is_angle(SweepParam::phase_lag));
  CHECK_FALSE(sweep_param_is_angle(SweepParam::freq_hz));
  const std::vector<SweepRow> rows{{0.0, -2.0, 0, 0}, {1.0, -1.0, 0, 0}, {2.0, 1.0, 0, 0}, {3.0, 2.0, 0, 0}};
  const auto x = sign_crossings(rows);
  REQUIRE(x.size() == 1);
  CHECK(x[0] == doctest::Approx(1.5));
}
