#include "orni/aero.hpp"

#include <stdexcept>

#include "orni/errors.hpp"

namespace orni {

std::string_view to_string(AeroModel m) {
  return m == AeroModel::normal_pressure ? "normal_pressure" : "flat_plate_lift_drag";
}

void AeroParams::validate() const {
  if (!(rho > 0.0)) throw ConfigError("aero: rho must be > 0");
  if (!(c_n0 > 0.0)) throw ConfigError("aero: c_n0 must be > 0");
}

kernels::KernelParams AeroParams::kernel_params() const {
  kernels::KernelParams kp;
  kp.law = model == AeroModel::normal_pressure ? kernels::ForceLaw::normal_pressure
                                               : kernels::ForceLaw::flat_plate_lift_drag;
  kp.half_rho = 0.5 * rho;
  kp.c_n0 = c_n0;
  return kp;
}

Vec3 strip_force(const StripState& s, const AeroParams& p) {
  const kernels::LoadBatch loads = strip_loads(std::span<const StripState>(&s, 1), p, kernels::Isa::scalar);
  return {loads.fx[0], loads.fy[0], loads.fz[0]};
}

kernels::LoadBatch strip_loads(std::span<const StripState> strips, const AeroParams& p) {
  return strip_loads(strips, p, kernels::active_isa());
}

kernels::LoadBatch strip_loads(std::span<const StripState> strips, const AeroParams& p, kernels::Isa isa) {
  kernels::StripBatch batch;
  batch.assign(strips);
  kernels::LoadBatch loads;
  kernels::kernel_for(isa)(batch, p.kernel_params(), loads);
  return loads;
}

Wrench sum_loads(const kernels::LoadBatch& loads, std::size_t begin, std::size_t end) {
  Wrench w;
  for (std::size_t i = begin; i < end; ++i) {
    w.force += Vec3{loads.fx[i], loads.fy[i], loads.fz[i]};
    w.moment += Vec3{loads.mx[i], loads.my[i], loads.mz[i]};
  }
  return w;
}

Wrench total_wrench(std::span<const StripState> strips, const AeroParams& p) {
  return total_wrench(strips, p, kernels::active_isa());
}

Wrench total_wrench(std::span<const StripState> strips, const AeroParams& p, kernels::Isa isa) {
  if (strips.empty()) throw std::invalid_argument("total_wrench: empty strip set");
  const kernels::LoadBatch loads = strip_loads(strips, p, isa);
  return sum_loads(loads, 0, loads.size());
}

LoadEvaluator::LoadEvaluator(const AeroParams& p, kernels::Isa isa)
    : params_(p.kernel_params()), kernel_(kernels::kernel_for(isa)) {}

const kernels::LoadBatch& LoadEvaluator::loads(std::span<const StripState> strips) {
  batch_.assign(strips);
  kernel_(batch_, params_, loads_);
  return loads_;
}

Wrench LoadEvaluator::wrench(std::span<const StripState> strips) {
  const kernels::LoadBatch& l = loads(strips);
  return sum_loads(l, 0, l.size());
}

Wrench shift_reference(const Wrench& w, const Vec3& r0) {
  return {w.force, w.moment - cross(r0 - w.ref_point, w.force), r0};
}

}  // namespace orni
