#pragma once

// Quasi-steady flat-plate aerodynamics on rigid strips. Forces depend on the
// instantaneous air-relative velocity and orientation only: no wake, no added
// mass, no spanwise flow.

#include <span>
#include <string_view>
#include <vector>

#include "orni/frames.hpp"
#include "orni/kernels.hpp"
#include "orni/wing_kinematics.hpp"

namespace orni {

enum class AeroModel { normal_pressure, flat_plate_lift_drag };

std::string_view to_string(AeroModel m);

struct AeroParams {
  double rho = 1.225;
  double c_n0 = 1.28;
  AeroModel model = AeroModel::normal_pressure;

  void validate() const;
  kernels::KernelParams kernel_params() const;
};

/// Total force and the moment about ref_point (always the CoM, the body
/// origin, unless shifted explicitly). moment.x > 0 is a right-handed roll.
struct Wrench {
  Vec3 force;
  Vec3 moment;
  Vec3 ref_point;
};

/// Force on one strip, applied at its centroid.
///   normal_pressure:      F = -(rho/2) c_n0 S v_n |v_n| n
///   flat_plate_lift_drag: C_L = 2 sin a cos a perpendicular to v_air in the
///                         (v_air, n) plane, C_D = 2 sin^2 a along -v_air.
Vec3 strip_force(const StripState& s, const AeroParams& p);

/// Per-strip loads through the given kernel (default: the active ISA).
kernels::LoadBatch strip_loads(std::span<const StripState> strips, const AeroParams& p);
kernels::LoadBatch strip_loads(std::span<const StripState> strips, const AeroParams& p, kernels::Isa isa);

/// F = sum F_i, M = sum r_i x F_i about the body origin, summed in index order.
Wrench total_wrench(std::span<const StripState> strips, const AeroParams& p);
Wrench total_wrench(std::span<const StripState> strips, const AeroParams& p, kernels::Isa isa);

/// Sum of a load batch over [begin, end), in index order.
Wrench sum_loads(const kernels::LoadBatch& loads, std::size_t begin, std::size_t end);

/// Reusable kernel buffers for repeated wrench evaluation in time loops.
class LoadEvaluator {
 public:
  explicit LoadEvaluator(const AeroParams& p, kernels::Isa isa = kernels::active_isa());

  const kernels::LoadBatch& loads(std::span<const StripState> strips);
  Wrench wrench(std::span<const StripState> strips);

 private:
  kernels::KernelParams params_;
  kernels::StripLoadsFn kernel_;
  kernels::StripBatch batch_;
  kernels::LoadBatch loads_;
};

/// Same wrench expressed about r0: M(r0) = M - (r0 - ref) x F.
Wrench shift_reference(const Wrench& w, const Vec3& r0);

}  // namespace orni
