#include "orni/wing_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orni/errors.hpp"

namespace orni {

void WingGeometry::validate() const {
  if (!(inner_span > 0.0 && outer_span > 0.0 && inner_chord > 0.0 && outer_chord > 0.0)) {
    throw ConfigError("geometry: spans and chords must be > 0");
  }
  if (strips_inner < 1 || strips_outer < 1) throw ConfigError("geometry: strip counts must be >= 1");
  if (!(h_com >= 0.0)) throw ConfigError("geometry: h_com must be >= 0");
}

void FlapDrive::validate() const {
  if (!(freq_hz > 0.0)) throw ConfigError("drive: freq_hz must be > 0");
  if (!(phi_amp >= 0.0 && psi_amp >= 0.0)) throw ConfigError("drive: amplitudes must be >= 0");
  if (!(std::abs(phi_mid) + phi_amp < kPi / 2.0)) {
    throw ConfigError("drive: |phi_mid| + phi_amp must be below 90 deg");
  }
  if (!(downstroke_fraction > 0.0 && downstroke_fraction < 1.0)) {
    throw ConfigError("drive: downstroke_fraction must lie in (0, 1)");
  }
}

void TwistCommand::validate() const {
  if (!(std::abs(delta_L) < kPi / 4.0 && std::abs(delta_R) < kPi / 4.0)) {
    throw ConfigError("twist: |delta| must be below 45 deg");
  }
}

Warp stroke_warp(double u, double downstroke_fraction) {
  u -= std::floor(u);
  const double d = downstroke_fraction;
  if (u < d) return {0.5 * u / d, 0.5 / d};
  return {0.5 + 0.5 * (u - d) / (1.0 - d), 0.5 / (1.0 - d)};
}

FlapAngles flap_angles(const FlapDrive& drive, double t) {
  const Warp w = stroke_warp(t * drive.freq_hz, drive.downstroke_fraction);
  const double a = 2.0 * kPi * w.phase;
  const double a_dot = 2.0 * kPi * w.rate * drive.freq_hz;
  FlapAngles out;
  out.phi = drive.phi_mid + drive.phi_amp * std::cos(a);
  out.phi_dot = -drive.phi_amp * std::sin(a) * a_dot;
  out.psi = drive.psi_mid + drive.psi_amp * std::cos(a + drive.phase_lag);
  out.psi_dot = -drive.psi_amp * std::sin(a + drive.phase_lag) * a_dot;
  return out;
}

FlapAngles flap_angles(const FlapDrive& drive, const LinkageFold& coupling, double t) {
  FlapAngles out = flap_angles(drive, t);
  const double crank = coupling.neutral_theta2 + coupling.gain * (out.phi - drive.phi_mid);
  out.psi = drive.psi_mid + linkage::servo_to_spar(coupling.fourbar, crank - coupling.neutral_theta2,
                                                   coupling.neutral_theta2);
  out.psi_dot = linkage::transmission_ratio(coupling.fourbar, crank) * coupling.gain * out.phi_dot;
  return out;
}

namespace {

double pitch_at(const PanelPose& p, double span_fraction) {
  return p.pitch_root + (p.pitch_tip - p.pitch_root) * span_fraction;
}

PanelPose mirrored(const PanelPose& p) {
  PanelPose m = p;
  m.side = Side::left;
  m.hinge = mirror_xz(p.hinge);
  m.pose = mirror_xz(p.pose);
  m.angular_velocity = mirror_xz_axial(p.angular_velocity);
  m.origin_velocity = mirror_xz(p.origin_velocity);
  return m;
}

// Right-side inner and outer panels for one twist value.
std::array<PanelPose, 2> right_wing(const WingGeometry& geom, const FlapAngles& ang, double delta,
                                    Washout washout, double incidence) {
  PanelPose inner;
  inner.side = Side::right;
  inner.section = Section::inner;
  inner.hinge = Pose{rot_x(-ang.phi), geom.shoulder_offset()};
  inner.angular_velocity = Vec3{-ang.phi_dot, 0.0, 0.0};
  inner.origin_velocity = Vec3{};
  inner.pitch_root = incidence;
  inner.pitch_tip = incidence;
  inner.pose = compose(inner.hinge, Pose{rot_y(incidence), {}});
  inner.span = geom.inner_span;
  inner.chord = geom.inner_chord;

  PanelPose outer;
  outer.side = Side::right;
  outer.section = Section::outer;
  outer.hinge = compose(inner.hinge, Pose{rot_x(-ang.psi), {0.0, geom.inner_span, 0.0}});
  outer.angular_velocity = Vec3{-(ang.phi_dot + ang.psi_dot), 0.0, 0.0};
  outer.origin_velocity = cross(inner.angular_velocity, outer.hinge.translation - inner.hinge.translation);
  outer.pitch_root = washout == Washout::rigid ? incidence + delta : incidence;
  outer.pitch_tip = incidence + delta;
  outer.pose = compose(outer.hinge, Pose{rot_y(outer.pitch_tip), {}});
  outer.span = geom.outer_span;
  outer.chord = geom.outer_chord;
  return {inner, outer};
}

}  // namespace

PanelSet panel_poses(const WingGeometry& geom, const FlapAngles& angles, const TwistCommand& twist,
                     double incidence) {
  const auto right = right_wing(geom, angles, twist.delta_R, twist.washout, incidence);
  const auto left = right_wing(geom, angles, twist.delta_L, twist.washout, incidence);
  return {right[0], right[1], mirrored(left[0]), mirrored(left[1])};
}

std::vector<StripState> make_strips(const PanelSet& panels, const WingGeometry& geom,
                                    const Vec3& body_velocity, double freestream_u,
                                    const Vec3& body_rate) {
  std::vector<StripState> strips;
  strips.reserve(2 * static_cast<std::size_t>(geom.strips_inner + geom.strips_outer));
  const Vec3 air{freestream_u, 0.0, 0.0};
  for (const PanelPose& p : panels) {
    const int n = p.section == Section::inner ? geom.strips_inner : geom.strips_outer;
    const double width = p.span / n;
    const double local_sign = p.side == Side::right ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
      const double frac = (k + 0.5) / n;
      const Vec3 local{0.0, local_sign * frac * p.span, 0.0};
      StripState s;
      s.centroid = transform_point(p.hinge, local);
      s.normal = p.hinge.rotation * (rot_y(pitch_at(p, frac)) * kUnitZ);
      s.area = width * p.chord;
      const Vec3 structural = p.origin_velocity + cross(p.angular_velocity, s.centroid - p.hinge.translation);
      s.v_air = structural + body_velocity + cross(body_rate, s.centroid) + air;
      strips.push_back(s);
    }
  }
  return strips;
}

std::vector<StripState> structural_strips(const WingGeometry& geom, const FlapDrive& drive,
                                          const TwistCommand& twist, double t, double incidence) {
  return make_strips(panel_poses(geom, flap_angles(drive, t), twist, incidence), geom, {}, 0.0);
}

double strip_velocity_check(const WingGeometry& geom, const FlapDrive& drive, const TwistCommand& twist,
                            double t, double h, double incidence) {
  if (!(h > 0.0)) throw std::invalid_argument("strip_velocity_check: h must be > 0");
  const auto now = structural_strips(geom, drive, twist, t, incidence);
  const auto ahead = structural_strips(geom, drive, twist, t + h, incidence);
  const auto behind = structural_strips(geom, drive, twist, t - h, incidence);
  double max_err = 0.0;
  double max_speed = 0.0;
  for (std::size_t k = 0; k < now.size(); ++k) {
    const Vec3 fd = (ahead[k].centroid - behind[k].centroid) * (1.0 / (2.0 * h));
    max_err = std::max(max_err, norm(now[k].v_air - fd));
    max_speed = std::max(max_speed, norm(now[k].v_air));
  }
  if (max_speed == 0.0) return max_err == 0.0 ? 0.0 : max_err;
  return max_err / max_speed;
}

}  // namespace orni
