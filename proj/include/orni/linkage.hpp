#pragma once

// Planar four-bar linkage: the servo-to-spar twist mechanism.
//
// Ground pivots sit at O2 = (0, 0) (servo shaft) and O4 = (d, 0) (spar root).
// The crank (servo arm, length a) turns about O2, the rocker (spar lever,
// length c) about O4, and the coupler (connecting bar, length b) joins their
// tips. Angles are measured counterclockwise from the ground line O2 -> O4 and
// satisfy the loop closure
//
//   a e^{i theta2} + b e^{i theta3} - d - c e^{i theta4} = 0.

#include <string_view>

namespace orni::linkage {

enum class Branch { open, crossed };

struct FourBar {
  double ground_d = 0.030;
  double crank_a = 0.012;
  double coupler_b = 0.030;
  double rocker_c = 0.015;
  Branch branch = Branch::open;

  /// Throws std::invalid_argument unless every length is finite and > 0.
  void validate() const;
  double max_length() const;
};

enum class GrashofClass {
  crank_rocker,
  double_crank,
  double_rocker,
  change_point,
  non_grashof_triple_rocker,
};

std::string_view to_string(GrashofClass c);
std::string_view to_string(Branch b);

struct LinkageState {
  double theta2 = 0.0;
  double theta3 = 0.0;
  double theta4 = 0.0;
};

GrashofClass classify(const FourBar& fb);

/// Closed-form position solution (half-angle substitution). Throws
/// NotAssemblableError when the crank-tip diagonal violates the coupler/rocker
/// triangle inequality and SingularConfigurationError when the diagonal
/// vanishes.
LinkageState solve(const FourBar& fb, double theta2);

/// |a e^{i t2} + b e^{i t3} - d - c e^{i t4}|
double closure_residual(const FourBar& fb, const LinkageState& s);

/// d theta4 / d theta2. Throws SingularConfigurationError near a toggle
/// (coupler and rocker collinear).
double transmission_ratio(const FourBar& fb, double theta2);

/// Spar twist produced by moving the servo `command` away from its neutral
/// crank angle; exactly zero for a zero command.
double servo_to_spar(const FourBar& fb, double command, double neutral_theta2);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace orni::linkage
