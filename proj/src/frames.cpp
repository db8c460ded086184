#include "orni/frames.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace orni {

double RotMatrix::determinant() const {
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

double RotMatrix::orthonormality_error() const {
  const RotMatrix rtr = transposed() * *this;
  double err = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      err = std::max(err, std::abs(rtr(r, c) - (r == c ? 1.0 : 0.0)));
    }
  }
  return err;
}

RotMatrix rot_axis_angle(const Vec3& axis, double angle) {
  const double n = norm(axis);
  if (!(std::abs(n - 1.0) <= 1e-9)) {
    throw std::invalid_argument("rot_axis_angle: axis must be a unit vector (|axis| = " +
                                std::to_string(n) + ")");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  return RotMatrix({{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
                     {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
                     {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}});
}

RotMatrix rot_x(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return RotMatrix({{{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}}});
}

RotMatrix rot_y(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return RotMatrix({{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}});
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

Vec3 transform_point(const Pose& p, const Vec3& v) { return p.rotation * v + p.translation; }

Vec3 transform_vector(const Pose& p, const Vec3& v) { return p.rotation * v; }

Pose inverse(const Pose& p) {
  const RotMatrix rt = p.rotation.transposed();
  return {rt, -(rt * p.translation)};
}

RotMatrix mirror_xz(const RotMatrix& r) {
  // Entries with exactly one y index change sign.
  RotMatrix::Rows m = r.m_;
  m[0][1] = -m[0][1];
  m[1][0] = -m[1][0];
  m[1][2] = -m[1][2];
  m[2][1] = -m[2][1];
  return RotMatrix(m);
}

Pose mirror_xz(const Pose& p) { return {mirror_xz(p.rotation), mirror_xz(p.translation)}; }

}  // namespace orni
