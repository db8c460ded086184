#pragma once

// Body frame is Forward-Right-Down: +x forward, +y right, +z down, up = -z.
// A positive moment about +x is a right-handed roll: the right wing drops and
// the vehicle turns right. Every module states signs in this convention.

#include <array>
#include <cmath>

namespace orni {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline constexpr Vec3 kUnitX{1.0, 0.0, 0.0};
inline constexpr Vec3 kUnitY{0.0, 1.0, 0.0};
inline constexpr Vec3 kUnitZ{0.0, 0.0, 1.0};

/// Proper rotation (orthonormal, det +1), row-major.
class RotMatrix {
 public:
  constexpr RotMatrix() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

  static constexpr RotMatrix identity() { return RotMatrix{}; }

  constexpr double operator()(int r, int c) const { return m_[r][c]; }

  constexpr Vec3 operator*(const Vec3& v) const {
    return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
            m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
            m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
  }

  constexpr RotMatrix operator*(const RotMatrix& o) const {
    Rows out{};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        out[r][c] = m_[r][0] * o.m_[0][c] + m_[r][1] * o.m_[1][c] + m_[r][2] * o.m_[2][c];
      }
    }
    return RotMatrix(out);
  }

  constexpr RotMatrix transposed() const {
    Rows out{};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) out[r][c] = m_[c][r];
    }
    return RotMatrix(out);
  }

  constexpr Vec3 column(int c) const { return {m_[0][c], m_[1][c], m_[2][c]}; }

  double determinant() const;

  /// max |(R^T R - I)_ij|
  double orthonormality_error() const;

  constexpr bool operator==(const RotMatrix&) const = default;

 private:
  using Rows = std::array<std::array<double, 3>, 3>;
  friend RotMatrix mirror_xz(const RotMatrix& r);
  friend RotMatrix rot_axis_angle(const Vec3& axis, double angle);
  friend RotMatrix rot_x(double angle);
  friend RotMatrix rot_y(double angle);
  constexpr explicit RotMatrix(const Rows& m) : m_(m) {}
  Rows m_;
};

/// Rodrigues rotation about a unit axis. Throws std::invalid_argument when
/// |axis| differs from 1 by more than 1e-9.
RotMatrix rot_axis_angle(const Vec3& axis, double angle);

/// Rotations about the body axes, built directly so the hinge chain avoids the
/// Rodrigues round-off.
RotMatrix rot_x(double angle);
RotMatrix rot_y(double angle);

struct Pose {
  RotMatrix rotation{};
  Vec3 translation{};

  static constexpr Pose identity() { return Pose{}; }
  constexpr bool operator==(const Pose&) const = default;
};

/// compose(a, b) applies b first, then a.
Pose compose(const Pose& a, const Pose& b);
Vec3 transform_point(const Pose& p, const Vec3& v);
Vec3 transform_vector(const Pose& p, const Vec3& v);
Pose inverse(const Pose& p);

/// Reflection through the body xz plane: (x, y, z) -> (x, -y, z).
constexpr Vec3 mirror_xz(const Vec3& v) { return {v.x, -v.y, v.z}; }

/// Conjugation M R M with M = diag(1, -1, 1). The result is again a proper
/// rotation; a rotation about x by a becomes a rotation about x by -a.
RotMatrix mirror_xz(const RotMatrix& r);

/// Pose seen in the mirrored world: translation reflected, rotation conjugated.
Pose mirror_xz(const Pose& p);

/// Angular velocity is a pseudovector; under the reflection it maps to -M w.
constexpr Vec3 mirror_xz_axial(const Vec3& w) { return {-w.x, w.y, -w.z}; }

inline constexpr double kPi = 3.14159265358979323846;
constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

}  // namespace orni
