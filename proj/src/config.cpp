#include "orni/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "orni/errors.hpp"

namespace orni::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Ctx {
  std::string_view source;
  std::size_t line;
  std::string key;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(std::string(source) + ":" + std::to_string(line) + ": " + key + ": " + msg);
  }

  double real(std::string_view v) const {
    double out = 0.0;
    const char* first = v.data();
    if (!v.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail("expected a finite number, got '" + std::string(v) + "'");
    }
    return out;
  }

  int integer(std::string_view v) const {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
      fail("expected an integer, got '" + std::string(v) + "'");
    }
    return out;
  }
};

using Setter = std::function<void(RunConfig&, const Ctx&, std::string_view)>;

Setter real_to(double sim::VehicleConfig::*f) {
  return [f](RunConfig& c, const Ctx& x, std::string_view v) { c.vehicle.*f = x.real(v); };
}
Setter geom_real(double WingGeometry::*f) {
  return [f](RunConfig& c, const Ctx& x, std::string_view v) { c.vehicle.geom.*f = x.real(v); };
}
Setter geom_int(int WingGeometry::*f) {
  return [f](RunConfig& c, const Ctx& x, std::string_view v) { c.vehicle.geom.*f = x.integer(v); };
}
Setter drive_real(double FlapDrive::*f, bool degrees) {
  return [f, degrees](RunConfig& c, const Ctx& x, std::string_view v) {
    const double d = x.real(v);
    c.vehicle.drive.*f = degrees ? deg_to_rad(d) : d;
  };
}

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s{
      {"vehicle",
       {{"variant",
         [](RunConfig& c, const Ctx& x, std::string_view v) {
           const auto var = sim::parse_variant(v);
           if (!var) x.fail("unknown variant '" + std::string(v) + "'");
           c.vehicle.variant = *var;
         }},
        {"u_cruise_mps", real_to(&sim::VehicleConfig::u_cruise)},
        {"wing_incidence_deg",
         [](RunConfig& c, const Ctx& x, std::string_view v) { c.vehicle.wing_incidence = deg_to_rad(x.real(v)); }},
        {"i_xx", real_to(&sim::VehicleConfig::i_xx)},
        {"roll_damping", real_to(&sim::VehicleConfig::roll_damping)}}},
      {"geometry",
       {{"inner_span_m", geom_real(&WingGeometry::inner_span)},
        {"outer_span_m", geom_real(&WingGeometry::outer_span)},
        {"inner_chord_m", geom_real(&WingGeometry::inner_chord)},
        {"outer_chord_m", geom_real(&WingGeometry::outer_chord)},
        {"h_com_m", geom_real(&WingGeometry::h_com)},
        {"strips_inner", geom_int(&WingGeometry::strips_inner)},
        {"strips_outer", geom_int(&WingGeometry::strips_outer)}}},
      {"drive",
       {{"freq_hz", drive_real(&FlapDrive::freq_hz, false)},
        {"phi_mid_deg", drive_real(&FlapDrive::phi_mid, true)},
        {"phi_amp_deg", drive_real(&FlapDrive::phi_amp, true)},
        {"psi_mid_deg", drive_real(&FlapDrive::psi_mid, true)},
        {"psi_amp_deg", drive_real(&FlapDrive::psi_amp, true)},
        {"phase_lag_deg", drive_real(&FlapDrive::phase_lag, true)},
        {"downstroke_fraction", drive_real(&FlapDrive::downstroke_fraction, false)}}},
      {"aero",
       {{"rho", [](RunConfig& c, const Ctx& x, std::string_view v) { c.vehicle.aero.rho = x.real(v); }},
        {"c_n0", [](RunConfig& c, const Ctx& x, std::string_view v) { c.vehicle.aero.c_n0 = x.real(v); }},
        {"model",
         [](RunConfig& c, const Ctx& x, std::string_view v) {
           if (v == to_string(AeroModel::normal_pressure)) {
             c.vehicle.aero.model = AeroModel::normal_pressure;
           } else if (v == to_string(AeroModel::flat_plate_lift_drag)) {
             c.vehicle.aero.model = AeroModel::flat_plate_lift_drag;
           } else {
             x.fail("unknown aero model '" + std::string(v) + "'");
           }
         }}}},
      {"sim",
       {{"dt_s", [](RunConfig& c, const Ctx& x, std::string_view v) { c.settings.dt = x.real(v); }},
        {"n_cycles", [](RunConfig& c, const Ctx& x, std::string_view v) { c.settings.n_cycles = x.integer(v); }},
        {"skip_cycles",
         [](RunConfig& c, const Ctx& x, std::string_view v) { c.settings.skip_cycles = x.integer(v); }}}},
  };
  return s;
}

}  // namespace

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

RunConfig parse_config(std::string_view text, std::string_view source_name) {
  RunConfig cfg;
  cfg.hash = fnv1a_hex(text);
  std::map<std::string, std::size_t> section_line;
  std::map<std::string, std::size_t> seen;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    Ctx ctx{source_name, line_no, {}};
    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        ctx.key = std::string(line);
        ctx.fail("malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      ctx.key = "[" + section + "]";
      if (!schema().count(section)) ctx.fail("unknown section");
      if (section_line.count(section)) ctx.fail("duplicate section");
      section_line[section] = line_no;
      continue;
    }
    const auto eq = line.find('=');
    const std::string key(trim(line.substr(0, eq)));
    ctx.key = section.empty() ? key : section + "." + key;
    if (eq == std::string_view::npos) ctx.fail("expected 'key = value'");
    if (section.empty()) ctx.fail("key outside of any section");
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) ctx.fail("unknown key");
    if (seen.count(ctx.key)) {
      ctx.fail("duplicate key (first set on line " + std::to_string(seen[ctx.key]) + ")");
    }
    seen[ctx.key] = line_no;
    it->second(cfg, ctx, trim(line.substr(eq + 1)));
  }

  try {
    cfg.vehicle.validate();
    cfg.settings.validate(cfg.vehicle.drive.period());
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const std::string sec = msg.substr(0, msg.find(':'));
    const auto it = section_line.find(sec);
    const std::string where =
        it == section_line.end() ? std::string(source_name) : std::string(source_name) + ":" + std::to_string(it->second);
    throw ConfigError(where + ": " + msg);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace orni::config
