// AArch64 Advanced SIMD variant, two lanes of double. Built only on aarch64,
// where the compiler must not contract mul/add pairs into fmla
// (-ffp-contract=off is set project-wide).

#if defined(__aarch64__)

#include <arm_neon.h>

#include "strip_load_scalar.hpp"

namespace orni::kernels {

void strip_loads_neon(const StripBatch& in, const KernelParams& p, LoadBatch& out) {
  const std::size_t n = in.size();
  out.resize(n);
  const std::size_t vec_end = n - n % 2;

  const float64x2_t half_rho = vdupq_n_f64(p.half_rho);
  const float64x2_t k_np = vdupq_n_f64(p.half_rho * p.c_n0);
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);

  for (std::size_t i = 0; i < vec_end; i += 2) {
    const float64x2_t nx = vld1q_f64(&in.nx[i]);
    const float64x2_t ny = vld1q_f64(&in.ny[i]);
    const float64x2_t nz = vld1q_f64(&in.nz[i]);
    const float64x2_t vx = vld1q_f64(&in.vx[i]);
    const float64x2_t vy = vld1q_f64(&in.vy[i]);
    const float64x2_t vz = vld1q_f64(&in.vz[i]);
    const float64x2_t area = vld1q_f64(&in.area[i]);
    const float64x2_t vn = vaddq_f64(vaddq_f64(vmulq_f64(vx, nx), vmulq_f64(vy, ny)), vmulq_f64(vz, nz));

    float64x2_t fx, fy, fz;
    if (p.law == ForceLaw::normal_pressure) {
      float64x2_t t = vmulq_f64(k_np, area);
      t = vmulq_f64(t, vn);
      t = vmulq_f64(t, vabsq_f64(vn));
      fx = vnegq_f64(vmulq_f64(t, nx));
      fy = vnegq_f64(vmulq_f64(t, ny));
      fz = vnegq_f64(vmulq_f64(t, nz));
    } else {
      const float64x2_t vv = vaddq_f64(vaddq_f64(vmulq_f64(vx, vx), vmulq_f64(vy, vy)), vmulq_f64(vz, vz));
      const uint64x2_t moving = vcgtq_f64(vv, zero);
      const float64x2_t inv = vdivq_f64(one, vsqrtq_f64(vv));
      const float64x2_t ux = vmulq_f64(vx, inv);
      const float64x2_t uy = vmulq_f64(vy, inv);
      const float64x2_t uz = vmulq_f64(vz, inv);
      const float64x2_t cn = vmulq_f64(vn, inv);
      const float64x2_t q2 = vmulq_f64(two, vmulq_f64(vmulq_f64(half_rho, area), vv));
      const float64x2_t drag = vmulq_f64(q2, vmulq_f64(cn, cn));
      const float64x2_t lift = vmulq_f64(q2, cn);
      auto component = [&](float64x2_t nc, float64x2_t uc) {
        const float64x2_t l = vnegq_f64(vmulq_f64(lift, vsubq_f64(nc, vmulq_f64(cn, uc))));
        const float64x2_t f = vsubq_f64(l, vmulq_f64(drag, uc));
        return vreinterpretq_f64_u64(vandq_u64(moving, vreinterpretq_u64_f64(f)));
      };
      fx = component(nx, ux);
      fy = component(ny, uy);
      fz = component(nz, uz);
    }

    const float64x2_t cx = vld1q_f64(&in.cx[i]);
    const float64x2_t cy = vld1q_f64(&in.cy[i]);
    const float64x2_t cz = vld1q_f64(&in.cz[i]);
    vst1q_f64(&out.fx[i], fx);
    vst1q_f64(&out.fy[i], fy);
    vst1q_f64(&out.fz[i], fz);
    vst1q_f64(&out.mx[i], vsubq_f64(vmulq_f64(cy, fz), vmulq_f64(cz, fy)));
    vst1q_f64(&out.my[i], vsubq_f64(vmulq_f64(cz, fx), vmulq_f64(cx, fz)));
    vst1q_f64(&out.mz[i], vsubq_f64(vmulq_f64(cx, fy), vmulq_f64(cy, fx)));
  }
  for (std::size_t i = vec_end; i < n; ++i) detail::store(out, i, detail::strip_load(in, p, i));
}

}  // namespace orni::kernels

#endif
