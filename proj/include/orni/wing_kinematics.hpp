#pragma once

// Double-pendulum wing chain: shoulder flap hinge -> inner panel -> elbow fold
// hinge -> outer panel -> spar twist. Both hinges are parallel to body x.
//
// Right wing, in the body frame:
//   inner hinge frame  H_i = {Rx(-phi), shoulder}
//   outer hinge frame  H_o = H_i o {Rx(-psi), (0, inner_span, 0)}
//   panel frame        P   = H o {Ry(pitch), 0}
// with pitch = incidence (inner) or incidence + delta (outer). Positive phi and
// psi raise the tip (toward -z); positive delta puts the trailing edge down.
// Panel frames: local x chordwise toward the leading edge, local z the panel
// normal. The left wing is the xz-mirror of a right wing built with delta_L;
// mirroring conjugates the frames, so on the left side local +y points inboard.

#include <array>
#include <optional>
#include <vector>

#include "orni/frames.hpp"
#include "orni/linkage.hpp"

namespace orni {

struct WingGeometry {
  double inner_span = 0.35;
  double outer_span = 0.35;
  double inner_chord = 0.12;
  double outer_chord = 0.12;
  int strips_inner = 16;
  int strips_outer = 16;
  double shoulder_y = 0.02;  ///< lateral offset of the right shoulder pivot
  double h_com = 0.05;       ///< height of the shoulder above the CoM

  /// Right shoulder pivot relative to the CoM; the root sits above it.
  Vec3 shoulder_offset() const { return {0.0, shoulder_y, -h_com}; }
  double semi_span() const { return inner_span + outer_span; }
  /// Area of both wings.
  double total_area() const { return 2.0 * (inner_span * inner_chord + outer_span * outer_chord); }
  void validate() const;
};

struct FlapDrive {
  double freq_hz = 4.0;
  double phi_mid = 0.0;
  double phi_amp = 0.0;
  double psi_mid = 0.0;
  double psi_amp = 0.0;
  double phase_lag = 0.0;
  double downstroke_fraction = 0.5;

  double period() const { return 1.0 / freq_hz; }
  void validate() const;
};

enum class Washout { rigid, linear_to_tip };

struct TwistCommand {
  double delta_L = 0.0;
  double delta_R = 0.0;
  Washout washout = Washout::rigid;

  /// Left trailing edge up, right trailing edge down for delta > 0: the
  /// aileron-style command that rolls a plane left.
  static TwistCommand differential(double delta, Washout w = Washout::rigid) {
    return {-delta, delta, w};
  }
  void validate() const;
};

struct FlapAngles {
  double phi = 0.0;
  double psi = 0.0;
  double phi_dot = 0.0;
  double psi_dot = 0.0;
};

enum class Side { right, left };
enum class Section { inner, outer };

struct PanelPose {
  Side side = Side::right;
  Section section = Section::inner;
  Pose hinge;                 ///< hinge frame, before incidence and twist
  Pose pose;                  ///< panel frame at the tip pitch
  Vec3 angular_velocity;      ///< body frame
  Vec3 origin_velocity;       ///< velocity of the hinge point
  double pitch_root = 0.0;    ///< incidence + twist at the panel root
  double pitch_tip = 0.0;     ///< incidence + twist at the panel tip
  double span = 0.0;
  double chord = 0.0;
};

/// Order: right inner, right outer, left inner, left outer.
using PanelSet = std::array<PanelPose, 4>;

struct StripState {
  Vec3 centroid;
  Vec3 normal;
  double area = 0.0;
  Vec3 v_air;  ///< centroid velocity relative to the air mass
};

/// Phase warp that spends `downstroke_fraction` of each period on the
/// downstroke (first half of the cosine cycle). Returns the warped phase in
/// cycles and its derivative with respect to normalized time.
struct Warp {
  double phase;
  double rate;
};
Warp stroke_warp(double u, double downstroke_fraction);

FlapAngles flap_angles(const FlapDrive& drive, double t);

PanelSet panel_poses(const WingGeometry& geom, const FlapAngles& angles, const TwistCommand& twist,
                     double incidence = 0.0);

/// Spanwise strips at mid-chord. v_air = structural velocity
/// + body_velocity + body_rate x r + (U, 0, 0).
std::vector<StripState> make_strips(const PanelSet& panels, const WingGeometry& geom,
                                    const Vec3& body_velocity, double freestream_u,
                                    const Vec3& body_rate = {});

/// Strips at time t with the body at rest in still air (structural motion only).
std::vector<StripState> structural_strips(const WingGeometry& geom, const FlapDrive& drive,
                                          const TwistCommand& twist, double t, double incidence = 0.0);

/// max_k |v_k - (r_k(t+h) - r_k(t-h)) / 2h| / max_k |v_k|; zero for a static wing.
double strip_velocity_check(const WingGeometry& geom, const FlapDrive& drive, const TwistCommand& twist,
                            double t, double h, double incidence = 0.0);

/// Fold driven through a four-bar instead of the prescribed sinusoid: the flap
/// deviation from phi_mid, scaled by `gain`, turns the crank away from
/// `neutral_theta2`, and the rocker excursion becomes the fold deviation from
/// psi_mid.
struct LinkageFold {
  linkage::FourBar fourbar;
  double neutral_theta2 = 0.0;
  double gain = 1.0;
};
FlapAngles flap_angles(const FlapDrive& drive, const LinkageFold& coupling, double t);

}  // namespace orni
