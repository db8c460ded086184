#include "orni/linkage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "orni/errors.hpp"
#include "orni/frames.hpp"

namespace orni::linkage {

namespace {

// |sin(theta4 - theta3)| below this is treated as a toggle.
constexpr double kToggleSin = 1e-6;

std::string angle_text(double theta2) {
  std::ostringstream os;
  os.precision(9);
  os << rad_to_deg(theta2) << " deg";
  return os.str();
}

}  // namespace

void FourBar::validate() const {
  for (double len : {ground_d, crank_a, coupler_b, rocker_c}) {
    if (!std::isfinite(len) || len <= 0.0) {
      throw std::invalid_argument("four-bar link lengths must be finite and > 0");
    }
  }
}

double FourBar::max_length() const { return std::max({ground_d, crank_a, coupler_b, rocker_c}); }

std::string_view to_string(GrashofClass c) {
  switch (c) {
    case GrashofClass::crank_rocker: return "crank_rocker";
    case GrashofClass::double_crank: return "double_crank";
    case GrashofClass::double_rocker: return "double_rocker";
    case GrashofClass::change_point: return "change_point";
    case GrashofClass::non_grashof_triple_rocker: return "non_grashof_triple_rocker";
  }
  return "unknown";
}

std::string_view to_string(Branch b) { return b == Branch::open ? "open" : "crossed"; }

GrashofClass classify(const FourBar& fb) {
  fb.validate();
  std::array<double, 4> len{fb.crank_a, fb.coupler_b, fb.rocker_c, fb.ground_d};
  std::array<double, 4> sorted = len;
  std::sort(sorted.begin(), sorted.end());
  const double s = sorted[0], p = sorted[1], q = sorted[2], l = sorted[3];
  if (s + l > p + q) return GrashofClass::non_grashof_triple_rocker;
  if (s + l == p + q) return GrashofClass::change_point;
  // Grashof: the position of the shortest link decides the inversion.
  if (fb.ground_d == s) return GrashofClass::double_crank;
  if (fb.crank_a == s || fb.rocker_c == s) return GrashofClass::crank_rocker;
  return GrashofClass::double_rocker;
}

LinkageState solve(const FourBar& fb, double theta2) {
  fb.validate();
  const double a = fb.crank_a, b = fb.coupler_b, c = fb.rocker_c, d = fb.ground_d;
  const double c2 = std::cos(theta2);
  const double s2 = std::sin(theta2);

  // Diagonal from the crank tip to the output pivot.
  const double dx = d - a * c2;
  const double dy = -a * s2;
  const double diag = std::hypot(dx, dy);
  const double tol = 1e-12 * fb.max_length();
  if (diag <= tol) {
    throw SingularConfigurationError("four-bar crank tip coincides with the output pivot at theta2 = " +
                                     angle_text(theta2));
  }
  if (diag > b + c + tol || diag < std::abs(b - c) - tol) {
    throw NotAssemblableError("four-bar not assemblable at theta2 = " + angle_text(theta2) +
                                  ": diagonal violates the coupler/rocker triangle inequality",
                              theta2);
  }

  // A t^2 + B t + C = 0 with t = tan(theta4 / 2).
  const double k1 = d / a;
  const double k2 = d / c;
  const double k3 = (a * a - b * b + c * c + d * d) / (2.0 * a * c);
  const double qa = c2 - k1 - k2 * c2 + k3;
  const double qb = -2.0 * s2;
  const double qc = k1 - (k2 + 1.0) * c2 + k3;
  const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
  const double root = std::sqrt(disc);
  const double sigma = fb.branch == Branch::open ? -1.0 : 1.0;

  // Two algebraically equal forms of t; use the better-conditioned one so the
  // qa -> 0 (theta4 -> pi) case stays exact.
  const double num1 = -qb + sigma * root;
  const double den1 = 2.0 * qa;
  const double num2 = 2.0 * qc;
  const double den2 = -qb - sigma * root;
  const double theta4 = std::max(std::abs(num1), std::abs(den1)) >= std::max(std::abs(num2), std::abs(den2))
                            ? 2.0 * std::atan2(num1, den1)
                            : 2.0 * std::atan2(num2, den2);

  LinkageState st;
  st.theta2 = theta2;
  st.theta4 = wrap_angle(theta4);
  st.theta3 = std::atan2(c * std::sin(st.theta4) - a * s2, d + c * std::cos(st.theta4) - a * c2);
  return st;
}

double closure_residual(const FourBar& fb, const LinkageState& s) {
  const double rx = fb.crank_a * std::cos(s.theta2) + fb.coupler_b * std::cos(s.theta3) - fb.ground_d -
                    fb.rocker_c * std::cos(s.theta4);
  const double ry = fb.crank_a * std::sin(s.theta2) + fb.coupler_b * std::sin(s.theta3) -
                    fb.rocker_c * std::sin(s.theta4);
  return std::hypot(rx, ry);
}

double transmission_ratio(const FourBar& fb, double theta2) {
  const LinkageState s = solve(fb, theta2);
  const double denom = std::sin(s.theta4 - s.theta3);
  if (std::abs(denom) < kToggleSin) {
    throw SingularConfigurationError("four-bar at a toggle (coupler and rocker collinear) at theta2 = " +
                                     angle_text(theta2));
  }
  return fb.crank_a * std::sin(s.theta2 - s.theta3) / (fb.rocker_c * denom);
}

double servo_to_spar(const FourBar& fb, double command, double neutral_theta2) {
  const double neutral = solve(fb, neutral_theta2).theta4;
  if (command == 0.0) return 0.0;
  return wrap_angle(solve(fb, neutral_theta2 + command).theta4 - neutral);
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace orni::linkage
