// Compiled with -mavx2 (and without -mfma). Only reached after a cpuid check.

#include <immintrin.h>

#include "strip_load_scalar.hpp"

namespace orni::kernels {

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }
inline __m256d vneg(__m256d x) { return _mm256_xor_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void strip_loads_avx2(const StripBatch& in, const KernelParams& p, LoadBatch& out) {
  const std::size_t n = in.size();
  out.resize(n);
  const std::size_t vec_end = n - n % 4;

  const __m256d half_rho = _mm256_set1_pd(p.half_rho);
  const __m256d k_np = _mm256_set1_pd(p.half_rho * p.c_n0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();

  for (std::size_t i = 0; i < vec_end; i += 4) {
    const __m256d nx = _mm256_loadu_pd(&in.nx[i]);
    const __m256d ny = _mm256_loadu_pd(&in.ny[i]);
    const __m256d nz = _mm256_loadu_pd(&in.nz[i]);
    const __m256d vx = _mm256_loadu_pd(&in.vx[i]);
    const __m256d vy = _mm256_loadu_pd(&in.vy[i]);
    const __m256d vz = _mm256_loadu_pd(&in.vz[i]);
    const __m256d area = _mm256_loadu_pd(&in.area[i]);
    const __m256d vn =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vx, nx), _mm256_mul_pd(vy, ny)), _mm256_mul_pd(vz, nz));

    __m256d fx, fy, fz;
    if (p.law == ForceLaw::normal_pressure) {
      __m256d t = _mm256_mul_pd(k_np, area);
      t = _mm256_mul_pd(t, vn);
      t = _mm256_mul_pd(t, vabs(vn));
      fx = vneg(_mm256_mul_pd(t, nx));
      fy = vneg(_mm256_mul_pd(t, ny));
      fz = vneg(_mm256_mul_pd(t, nz));
    } else {
      const __m256d vv =
          _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)), _mm256_mul_pd(vz, vz));
      const __m256d moving = _mm256_cmp_pd(vv, zero, _CMP_GT_OQ);
      // Lanes at rest divide by zero here and are masked out below.
      const __m256d inv = _mm256_div_pd(one, _mm256_sqrt_pd(vv));
      const __m256d ux = _mm256_mul_pd(vx, inv);
      const __m256d uy = _mm256_mul_pd(vy, inv);
      const __m256d uz = _mm256_mul_pd(vz, inv);
      const __m256d cn = _mm256_mul_pd(vn, inv);
      const __m256d q2 = _mm256_mul_pd(two, _mm256_mul_pd(_mm256_mul_pd(half_rho, area), vv));
      const __m256d drag = _mm256_mul_pd(q2, _mm256_mul_pd(cn, cn));
      const __m256d lift = _mm256_mul_pd(q2, cn);
      auto component = [&](__m256d nc, __m256d uc) {
        const __m256d l = vneg(_mm256_mul_pd(lift, _mm256_sub_pd(nc, _mm256_mul_pd(cn, uc))));
        return _mm256_and_pd(moving, _mm256_sub_pd(l, _mm256_mul_pd(drag, uc)));
      };
      fx = component(nx, ux);
      fy = component(ny, uy);
      fz = component(nz, uz);
    }

    const __m256d cx = _mm256_loadu_pd(&in.cx[i]);
    const __m256d cy = _mm256_loadu_pd(&in.cy[i]);
    const __m256d cz = _mm256_loadu_pd(&in.cz[i]);
    _mm256_storeu_pd(&out.fx[i], fx);
    _mm256_storeu_pd(&out.fy[i], fy);
    _mm256_storeu_pd(&out.fz[i], fz);
    _mm256_storeu_pd(&out.mx[i], _mm256_sub_pd(_mm256_mul_pd(cy, fz), _mm256_mul_pd(cz, fy)));
    _mm256_storeu_pd(&out.my[i], _mm256_sub_pd(_mm256_mul_pd(cz, fx), _mm256_mul_pd(cx, fz)));
    _mm256_storeu_pd(&out.mz[i], _mm256_sub_pd(_mm256_mul_pd(cx, fy), _mm256_mul_pd(cy, fx)));
  }
  for (std::size_t i = vec_end; i < n; ++i) detail::store(out, i, detail::strip_load(in, p, i));
}

}  // namespace orni::kernels
