#include "strip_load_scalar.hpp"

#include <stdexcept>

#include "orni/wing_kinematics.hpp"

namespace orni::kernels {

void StripBatch::resize(std::size_t n) {
  for (auto* v : {&cx, &cy, &cz, &nx, &ny, &nz, &area, &vx, &vy, &vz}) v->resize(n);
}

void StripBatch::assign(std::span<const StripState> strips) {
  resize(strips.size());
  for (std::size_t i = 0; i < strips.size(); ++i) {
    const StripState& s = strips[i];
    cx[i] = s.centroid.x;
    cy[i] = s.centroid.y;
    cz[i] = s.centroid.z;
    nx[i] = s.normal.x;
    ny[i] = s.normal.y;
    nz[i] = s.normal.z;
    area[i] = s.area;
    vx[i] = s.v_air.x;
    vy[i] = s.v_air.y;
    vz[i] = s.v_air.z;
  }
}

void LoadBatch::resize(std::size_t n) {
  for (auto* v : {&fx, &fy, &fz, &mx, &my, &mz}) v->resize(n);
}

void strip_loads_scalar(const StripBatch& in, const KernelParams& p, LoadBatch& out) {
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) detail::store(out, i, detail::strip_load(in, p, i));
}

}  // namespace orni::kernels
