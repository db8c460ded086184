#include <doctest.h>

#include <random>
#include <stdexcept>

#include "orni/frames.hpp"

using namespace orni;

namespace {

void check_vec(const Vec3& a, const Vec3& b, double tol) {
  CHECK(std::abs(a.x - b.x) <= tol);
  CHECK(std::abs(a.y - b.y) <= tol);
  CHECK(std::abs(a.z - b.z) <= tol);
}

double max_diff(const RotMatrix& a, const RotMatrix& b) {
  double m = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v{n(rng), n(rng), n(rng)};
  return v * (1.0 / norm(v));
}

Pose random_pose(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return {rot_axis_angle(random_unit(rng), u(rng)), {u(rng), u(rng), u(rng)}};
}

}  // namespace

TEST_CASE("rotation about x by zero is the identity") {
  CHECK(max_diff(rot_axis_angle(kUnitX, 0.0), RotMatrix::identity()) == 0.0);
}

TEST_CASE("quarter turn about z maps x to y") {
  const Vec3 v = rot_axis_angle(kUnitZ, kPi / 2.0) * kUnitX;
  CHECK(std::abs(v.x) < 1e-15);
  CHECK(std::abs(v.y - 1.0) < 1e-15);
  CHECK(std::abs(v.z) < 1e-15);
}

TEST_CASE("opposite rotations about the same axis cancel") {
  const RotMatrix r = rot_axis_angle(kUnitX, 0.7) * rot_axis_angle(kUnitX, -0.7);
  CHECK(max_diff(r, RotMatrix::identity()) < 1e-15);
}

TEST_CASE("non-unit axis is rejected") {
  CHECK_THROWS_AS(rot_axis_angle({1.0, 1.0, 0.0}, 0.3), std::invalid_argument);
  CHECK_NOTHROW(rot_axis_angle({1.0 + 5e-10, 0.0, 0.0}, 0.3));
}

TEST_CASE("axis rotations agree with Rodrigues") {
  for (double a : {-2.0, -0.3, 0.0, 0.9, 3.0}) {
    CHECK(max_diff(rot_x(a), rot_axis_angle(kUnitX, a)) < 1e-15);
    CHECK(max_diff(rot_y(a), rot_axis_angle(kUnitY, a)) < 1e-15);
  }
  // Right-handed: a positive turn about y carries +z toward +x.
  const Vec3 v = rot_y(kPi / 2.0) * kUnitZ;
  CHECK(std::abs(v.x - 1.0) < 1e-15);
}

TEST_CASE("pose composition and transforms") {
  const Pose p{rot_axis_angle(kUnitZ, 0.4), {1.0, 2.0, 3.0}};
  CHECK(compose(Pose::identity(), p) == p);
  const Pose t{RotMatrix::identity(), {1.0, 0.0, 0.0}};
  CHECK(transform_point(t, {0.0, 0.0, 0.0}) == Vec3{1.0, 0.0, 0.0});
  CHECK(transform_vector(t, kUnitZ) == kUnitZ);

  // compose(a, b) applies b first.
  const Pose a{rot_axis_angle(kUnitZ, kPi / 2.0), {0.0, 0.0, 0.0}};
  const Pose b{RotMatrix::identity(), {1.0, 0.0, 0.0}};
  check_vec(transform_point(compose(a, b), {0.0, 0.0, 0.0}), {0.0, 1.0, 0.0}, 1e-15);
}

TEST_CASE("random rotations stay proper and composition is associative") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Pose a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    const Pose l = compose(compose(a, b), c);
    const Pose r = compose(a, compose(b, c));
    CHECK(max_diff(l.rotation, r.rotation) < 1e-12);
    CHECK(norm(l.translation - r.translation) < 1e-12);
    CHECK(l.rotation.orthonormality_error() < 1e-12);
    CHECK(std::abs(l.rotation.determinant() - 1.0) < 1e-12);

    const Pose inv = compose(inverse(a), a);
    CHECK(max_diff(inv.rotation, RotMatrix::identity()) < 1e-12);
    CHECK(norm(inv.translation) < 1e-12);
  }
}

TEST_CASE("mirror through the xz plane") {
  CHECK(mirror_xz(Vec3{1.0, 2.0, 3.0}) == Vec3{1.0, -2.0, 3.0});
  const Vec3 v{0.3, -1.1, 2.0};
  CHECK(mirror_xz(mirror_xz(v)) == v);
  CHECK(mirror_xz(kUnitX) == kUnitX);
}

TEST_CASE("mirrored rotations are proper and match reflected action") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Pose p = random_pose(rng);
    const Pose m = mirror_xz(p);
    CHECK(std::abs(m.rotation.determinant() - 1.0) < 1e-12);
    CHECK(m.rotation.orthonormality_error() < 1e-12);
    // M (R v + t) = R' (M v) + M t
    const Vec3 v{0.2, -0.7, 1.3};
    check_vec(mirror_xz(transform_point(p, v)), transform_point(m, mirror_xz(v)), 1e-12);
    CHECK(mirror_xz(m) == p);
  }
  // Rotation about x by a becomes rotation about x by -a.
  CHECK(max_diff(mirror_xz(rot_x(0.6)), rot_x(-0.6)) < 1e-15);
  CHECK(max_diff(mirror_xz(rot_y(0.6)), rot_y(0.6)) < 1e-15);
}

TEST_CASE("angular velocity mirrors as a pseudovector") {
  // A point rotating about x with rate w: its mirror rotates with rate -w.
  const Vec3 w{0.8, 0.3, -0.5};
  const Vec3 r{0.1, 0.4, -0.2};
  const Vec3 v = cross(w, r);
  check_vec(mirror_xz(v), cross(mirror_xz_axial(w), mirror_xz(r)), 1e-15);
}

TEST_CASE("degree conversion round trip") {
  CHECK(deg_to_rad(180.0) == kPi);
  CHECK(std::abs(rad_to_deg(deg_to_rad(37.5)) - 37.5) < 1e-13);
}
