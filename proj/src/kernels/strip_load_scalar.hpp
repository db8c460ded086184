#pragma once

// Scalar strip-load formulas shared by the reference kernel and the tails of
// the SIMD kernels. Operation order here is the contract the SIMD variants
// reproduce lane by lane.

#include <cmath>

#include "orni/kernels.hpp"

namespace orni::kernels::detail {

struct Load {
  double fx, fy, fz, mx, my, mz;
};

inline Load strip_load(const StripBatch& in, const KernelParams& p, std::size_t i) {
  const double nx = in.nx[i], ny = in.ny[i], nz = in.nz[i];
  const double vx = in.vx[i], vy = in.vy[i], vz = in.vz[i];
  const double vn = (vx * nx + vy * ny) + vz * nz;
  double fx, fy, fz;
  if (p.law == ForceLaw::normal_pressure) {
    // F = -(rho/2) c_n0 S v_n |v_n| n
    double t = (p.half_rho * p.c_n0) * in.area[i];
    t = t * vn;
    t = t * std::fabs(vn);
    fx = -(t * nx);
    fy = -(t * ny);
    fz = -(t * nz);
  } else {
    // C_L = 2 sin a cos a along the unit lift direction, C_D = 2 sin^2 a
    // along -v. With cn = n.v/|v| the lift vector reduces to
    // -2q cn (n - cn u), which needs no division by cos a.
    const double vv = (vx * vx + vy * vy) + vz * vz;
    if (vv > 0.0) {
      const double inv = 1.0 / std::sqrt(vv);
      const double ux = vx * inv, uy = vy * inv, uz = vz * inv;
      const double cn = vn * inv;
      const double q2 = 2.0 * ((p.half_rho * in.area[i]) * vv);
      const double drag = q2 * (cn * cn);
      const double lift = q2 * cn;
      fx = -(lift * (nx - cn * ux)) - drag * ux;
      fy = -(lift * (ny - cn * uy)) - drag * uy;
      fz = -(lift * (nz - cn * uz)) - drag * uz;
    } else {
      fx = fy = fz = 0.0;
    }
  }
  const double cx = in.cx[i], cy = in.cy[i], cz = in.cz[i];
  return {fx, fy, fz, cy * fz - cz * fy, cz * fx - cx * fz, cx * fy - cy * fx};
}

inline void store(LoadBatch& out, std::size_t i, const Load& l) {
  out.fx[i] = l.fx;
  out.fy[i] = l.fy;
  out.fz[i] = l.fz;
  out.mx[i] = l.mx;
  out.my[i] = l.my;
  out.mz[i] = l.mz;
}

}  // namespace orni::kernels::detail
