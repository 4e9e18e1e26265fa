#ifndef DIMER_KERNELS_HPP
#define DIMER_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string>

#include "dimer/coupling.hpp"
#include "dimer/params.hpp"

namespace dimer::kernels {

// Fixed per-sweep inputs for the detuning-batch kernel: everything except
// the detuning itself.
struct ResponseContext {
    double gamma0 = 1.0;
    double gamma = 1.0;  // gamma0 + gamma_nr
    double Gamma = 1.0;  // gamma + P
    double gamma_nr = 0.0;
    double pump_P = 0.0;
    double rabi0 = 0.0;
    double pol = 1.0;
    double omega_shift = 0.0;
    double gamma_coll = 0.0;

    static ResponseContext from(const SystemParams& p, const DipoleCoupling& c);
};

// Struct-of-arrays output; each span must have the same length as the
// detuning input. Every element depends only on the detuning with the same
// index, so results are identical for any chunking of the input.
struct ResponseBatch {
    std::span<double> sc_single, sc_coll, sc_total;
    std::span<double> abs_single, abs_coll, abs_total;
    std::span<double> ext_coll, ext_total;
    std::span<double> gamma0_rate, ret_rate, semiclassical;
};

using BatchKernelFn = void (*)(const ResponseContext&,
                               std::span<const double> detuning,
                               const ResponseBatch& out, std::size_t offset);

// Scalar reference kernel: defers to the single-point response functions.
void eval_batch_scalar(const ResponseContext& ctx,
                       std::span<const double> detuning,
                       const ResponseBatch& out, std::size_t offset);

// Vectorized kernel (std::experimental::simd when available). Remainder
// elements are evaluated through a padded full vector so the arithmetic per
// element never depends on where chunk boundaries fall.
void eval_batch_simd(const ResponseContext& ctx,
                     std::span<const double> detuning,
                     const ResponseBatch& out, std::size_t offset);
bool simd_kernel_available();
const char* simd_kernel_label(); // e.g. "simd(avx2)", "simd(native)"

// Kernel selected once per process: the SIMD variant when compiled in and
// supported by the CPU, else the scalar reference. DIMER_SIMD=scalar|simd
// overrides.
BatchKernelFn active_kernel();
std::string active_kernel_name();

} // namespace dimer::kernels

#endif
