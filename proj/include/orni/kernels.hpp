#pragma once

// Per-strip aerodynamic load kernels over structure-of-arrays batches.
//
// Each ISA variant evaluates exactly the same sequence of IEEE operations as
// the scalar reference (no fused multiply-add, no reassociation), so every
// variant returns bit-identical loads. Reductions over strips are left to the
// caller and done sequentially in index order.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace orni {
struct StripState;
}

namespace orni::kernels {

enum class ForceLaw { normal_pressure, flat_plate_lift_drag };

struct KernelParams {
  ForceLaw law = ForceLaw::normal_pressure;
  double half_rho = 0.6125;  ///< rho / 2
  double c_n0 = 1.28;
};

struct StripBatch {
  std::vector<double> cx, cy, cz;  ///< centroid
  std::vector<double> nx, ny, nz;  ///< unit normal
  std::vector<double> area;
  std::vector<double> vx, vy, vz;  ///< air-relative velocity

  std::size_t size() const { return area.size(); }
  void resize(std::size_t n);
  void assign(std::span<const StripState> strips);
};

struct LoadBatch {
  std::vector<double> fx, fy, fz;  ///< force on the strip
  std::vector<double> mx, my, mz;  ///< centroid x force, about the body origin

  std::size_t size() const { return fx.size(); }
  void resize(std::size_t n);
};

using StripLoadsFn = void (*)(const StripBatch&, const KernelParams&, LoadBatch&);

void strip_loads_scalar(const StripBatch& in, const KernelParams& p, LoadBatch& out);
#if defined(__x86_64__) || defined(_M_X64)
void strip_loads_avx2(const StripBatch& in, const KernelParams& p, LoadBatch& out);
#endif
#if defined(__aarch64__)
void strip_loads_neon(const StripBatch& in, const KernelParams& p, LoadBatch& out);
#endif

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// True when the variant is compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

/// Throws std::invalid_argument for an unsupported ISA.
StripLoadsFn kernel_for(Isa isa);

/// Widest supported ISA, detected once per process.
Isa active_isa();

}  // namespace orni::kernels
