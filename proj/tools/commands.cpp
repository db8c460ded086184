#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "orni/config.hpp"
#include "orni/errors.hpp"
#include "orni/linkage.hpp"
#include "orni/sim.hpp"
#include "orni/telemetry.hpp"

namespace orni::cli {

namespace {

using telemetry::format_double;

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%+.9e", v);
  return buf;
}

std::string sign_text(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
  if (!f.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

double twist_rad(double deg) {
  const double r = deg_to_rad(deg);
  TwistCommand::differential(r).validate();
  return r;
}

std::string vec_text(const Vec3& v) { return "(" + sci(v.x) + ", " + sci(v.y) + ", " + sci(v.z) + ")"; }

}  // namespace

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const config::RunConfig rc = config::load_config(a.config);
  const double delta = twist_rad(a.twist_deg);
  const TwistCommand twist = TwistCommand::differential(delta);
  const sim::TimeSeries ts = sim::simulate_tethered(rc.vehicle, twist, rc.settings);
  const sim::CycleAverage avg = sim::cycle_average(ts, rc.vehicle.drive.freq_hz, rc.settings.skip_cycles);
  const double floor_l = delta == 0.0 ? std::abs(avg.L_bar)
                                      : std::abs(sim::run_average(rc.vehicle, 0.0, rc.settings).L_bar);
  const double noise = std::max(floor_l, 1e-12 * rc.vehicle.moment_scale());
  const int sign = sim::classify_sign(avg.L_bar, noise);

  if (!a.out.empty()) {
    std::string csv = "t,phi_deg,psi_deg,delta_a_deg,fx,fy,fz,mx,my,mz\n";
    for (const auto& r : ts.rows) {
      for (double v : {r.t, rad_to_deg(r.phi), rad_to_deg(r.psi), rad_to_deg(r.delta_a), r.force.x, r.force.y,
                       r.force.z, r.moment.x, r.moment.y}) {
        csv += format_double(v);
        csv += ',';
      }
      csv += format_double(r.moment.z);
      csv += '\n';
    }
    write_file(a.out, csv);
  }

  nlohmann::ordered_json j;
  j["config_hash"] = rc.hash;
  j["delta_a_deg"] = a.twist_deg;
  j["l_bar"] = avg.L_bar;
  j["m_bar"] = avg.M_bar;
  j["n_bar"] = avg.N_bar;
  j["thrust_bar"] = avg.thrust_bar;
  j["lift_bar"] = avg.lift_bar;
  j["sign_l"] = sign;
  j["cycles_used"] = avg.cycles_used;
  if (!a.summary.empty()) write_file(a.summary, j.dump(2) + "\n");

  out << "variant     " << sim::to_string(rc.vehicle.variant) << "\n"
      << "delta_a_deg " << format_double(a.twist_deg) << "\n"
      << "l_bar       " << sci(avg.L_bar) << "\n"
      << "m_bar       " << sci(avg.M_bar) << "\n"
      << "n_bar       " << sci(avg.N_bar) << "\n"
      << "thrust_bar  " << sci(avg.thrust_bar) << "\n"
      << "lift_bar    " << sci(avg.lift_bar) << "\n"
      << "sign_l      " << sign << "\n"
      << "cycles_used " << avg.cycles_used << "\n";
  return kExitOk;
}

int run_compare(const CompareArgs& a, std::ostream& out) {
  const config::RunConfig rc = config::load_config(a.config);
  const double delta = twist_rad(a.twist_deg);
  const auto rows = sim::compare_configs(rc.vehicle, delta, rc.settings);

  char line[160];
  std::snprintf(line, sizeof line, "%-22s %17s %17s %5s\n", "variant", "l_bar", "noise_floor", "sign");
  out << line;
  std::string csv = "variant,l_bar,sign\n";
  for (const auto& r : rows) {
    const std::string name(sim::to_string(r.variant));
    std::snprintf(line, sizeof line, "%-22s %17s %17s %5s\n", name.c_str(), sci(r.L_bar).c_str(),
                  sci(r.noise_floor).c_str(), sign_text(r.sign).c_str());
    out << line;
    csv += name + "," + format_double(r.L_bar) + "," + sign_text(r.sign) + "\n";
  }
  if (!a.out.empty()) write_file(a.out, csv);
  return kExitOk;
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
  const auto param = sim::parse_sweep_param(a.param);
  if (!param) throw ConfigError("unknown sweep parameter '" + a.param + "'");
  if (a.steps < 2) throw ConfigError("--steps must be >= 2");
  const config::RunConfig rc = config::load_config(a.config);
  const double delta = twist_rad(a.twist_deg);
  const bool angle = sim::sweep_param_is_angle(*param);

  std::vector<double> cli_values(static_cast<std::size_t>(a.steps));
  std::vector<double> values(cli_values.size());
  for (int i = 0; i < a.steps; ++i) {
    const double v = a.from + (a.to - a.from) * static_cast<double>(i) / static_cast<double>(a.steps - 1);
    cli_values[static_cast<std::size_t>(i)] = v;
    values[static_cast<std::size_t>(i)] = angle ? deg_to_rad(v) : v;
  }
  // Validate every point up front so a bad range is a usage error.
  for (double v : values) sim::apply_sweep_param(rc.vehicle, *param, v).validate();

  const auto rows = sim::sweep(rc.vehicle, *param, values, delta, rc.settings);
  const std::string name(sim::to_string(*param));
  std::string csv = "param,value,l_bar,n_bar,thrust_bar\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv += name + "," + format_double(cli_values[i]) + "," + format_double(rows[i].L_bar) + "," +
           format_double(rows[i].N_bar) + "," + format_double(rows[i].thrust_bar) + "\n";
  }

  std::vector<sim::SweepRow> cli_rows = rows;
  for (std::size_t i = 0; i < cli_rows.size(); ++i) cli_rows[i].value = cli_values[i];
  const auto crossings = sim::sign_crossings(cli_rows);

  if (!a.out.empty()) {
    std::filesystem::path gp(a.out);
    gp.replace_extension(".gp");
    std::filesystem::path png(a.out);
    png.replace_extension(".png");
    std::ostringstream s;
    s << "# L_bar against " << name << "\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output '" << png.string() << "'\n"
      << "set xlabel '" << name << "'\n"
      << "set ylabel 'L_bar [N m]'\n"
      << "set grid\n"
      << "plot '" << a.out << "' every ::1 using 2:3 with linespoints title 'L_bar', 0 with lines notitle\n";
    write_file(a.out, csv);
    write_file(gp.string(), s.str());
  }

  out << csv;
  if (crossings.empty()) {
    out << "crossover " << name << " none\n";
  } else {
    for (double x : crossings) out << "crossover " << name << " " << format_double(x) << "\n";
  }
  return kExitOk;
}

int run_mstatic(const MStaticArgs& a, std::ostream& out, std::ostream& err) {
  const config::RunConfig rc = config::load_config(a.config);
  const double delta = twist_rad(a.twist_deg);
  sim::MStaticInput in = sim::downstroke_snapshot(rc.vehicle, delta);
  in.psi = deg_to_rad(a.psi_deg);
  const sim::MStaticReport rep = sim::m_static_oracle(rc.vehicle, in);

  static constexpr const char* kNames[4] = {"right_inner", "right_outer", "left_inner", "left_outer"};
  out << "phi_deg " << format_double(rad_to_deg(in.phi)) << "  psi_deg " << format_double(a.psi_deg)
      << "  phi_dot " << format_double(in.phi_dot) << "  delta_deg " << format_double(a.twist_deg) << "\n";
  for (std::size_t k = 0; k < 4; ++k) {
    out << kNames[k] << " force " << vec_text(rep.panels[k].force) << "\n";
  }
  out << "total force  " << vec_text(rep.total.force) << "\n"
      << "total moment " << vec_text(rep.total.moment) << "\n"
      << "outer_fy right " << sci(rep.outer_fy_right) << "  left " << sci(rep.outer_fy_left) << "\n"
      << "outer_dfy right " << sci(rep.outer_dfy_right) << "  left " << sci(rep.outer_dfy_left) << "\n"
      << "common_mode " << (rep.common_mode ? "yes" : "no") << "\n";
  if (delta != 0.0 && !rep.common_mode) {
    err << "mstatic: outer-panel lateral forces do not share a sign (right " << sci(rep.outer_fy_right)
        << ", left " << sci(rep.outer_fy_left) << "): the differential twist did not become common mode\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_linkage(const LinkageArgs& a, std::ostream& out) {
  linkage::FourBar fb{a.d, a.a, a.b, a.c, linkage::Branch::open};
  if (a.branch == "crossed") {
    fb.branch = linkage::Branch::crossed;
  } else if (a.branch != "open") {
    throw ConfigError("--branch must be 'open' or 'crossed'");
  }
  try {
    fb.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double t2 = deg_to_rad(a.theta2_deg);
  const linkage::LinkageState s = linkage::solve(fb, t2);
  char buf[96];
  out << "grashof     " << linkage::to_string(linkage::classify(fb)) << "\n";
  out << "branch      " << linkage::to_string(fb.branch) << "\n";
  std::snprintf(buf, sizeof buf, "%.9f", rad_to_deg(s.theta3));
  out << "theta3_deg  " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.9f", rad_to_deg(s.theta4));
  out << "theta4_deg  " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.3e", linkage::closure_residual(fb, s));
  out << "residual    " << buf << "\n";
  try {
    std::snprintf(buf, sizeof buf, "%.12g", linkage::transmission_ratio(fb, t2));
    out << "transmission_ratio " << buf << "\n";
  } catch (const SingularConfigurationError&) {
    out << "transmission_ratio toggle\n";
  }
  return kExitOk;
}

int run_roll(const RollArgs& a, std::ostream& out) {
  config::RunConfig rc = config::load_config(a.config);
  const double delta = twist_rad(a.twist_deg);
  if (!(a.period_s > 0.0) || !(a.duration_s > 0.0)) throw ConfigError("--period and --duration must be > 0");
  const auto sched = sim::ControlSchedule::square_wave(delta, a.period_s, a.duration_s);
  sim::SimSettings s = rc.settings;
  s.n_cycles = static_cast<int>(std::ceil(a.duration_s * rc.vehicle.drive.freq_hz - 1e-9));
  const auto rows = sim::roll_response(rc.vehicle, sched, s);
  const std::string text = telemetry::synth_log(rows);
  if (!a.out.empty()) write_file(a.out, text);
  out << "rows " << rows.size() << "  final_roll_deg " << format_double(rad_to_deg(rows.back().roll)) << "\n";
  return kExitOk;
}

int run_correlate(const CorrelateArgs& a, std::ostream& out) {
  if (!(a.resample_dt > 0.0) || !(a.max_lag >= 0.0)) {
    throw ConfigError("--resample-dt must be > 0 and --max-lag >= 0");
  }
  std::ifstream f(a.log, std::ios::binary);
  if (!f) throw DataError("cannot open log file '" + a.log + "'");
  const auto records = telemetry::parse_log(f);
  const auto rep = telemetry::correlate(records, a.max_lag, a.resample_dt);
  out << "best_lag_s " << format_double(rep.best_lag) << "\n"
      << "pearson_r  " << format_double(rep.pearson_r) << "\n"
      << "sign       " << telemetry::to_string(rep.sign) << "\n"
      << "n_samples  " << rep.n_samples << "\n";
  return kExitOk;
}

}  // namespace orni::cli
