// Vectorized detuning-batch kernel. Compiled with AVX2+FMA flags on x86_64
// (see CMakeLists); callers must gate on simd_kernel_available().

#include "dimer/kernels.hpp"

#if defined(__has_include)
#if __has_include(<experimental/simd>)
#define DIMER_HAVE_STD_SIMD 1
#include <experimental/simd>
#endif
#endif

#include <array>

namespace dimer::kernels {

#if DIMER_HAVE_STD_SIMD

namespace stdx = std::experimental;
using vdouble = stdx::native_simd<double>;

namespace {

struct Row {
    vdouble sc_single, sc_coll, sc_total;
    vdouble abs_single, abs_coll, abs_total;
    vdouble ext_coll, ext_total;
    vdouble g0_rate, ret, semicl;
};

// Same line shapes as the scalar reference, one detuning per lane.
Row eval_lanes(const ResponseContext& c, vdouble d) {
    const double g0 = c.gamma0;
    const double gamma = c.gamma;
    const double Gamma = c.Gamma;
    const double gsum = gamma + Gamma;
    const double wg = gamma / Gamma;
    const double we = c.pump_P / Gamma;
    const double Ot = c.omega_shift;
    const double Gt = c.gamma_coll;
    const double gG4 = 0.25 * gamma * Gamma;
    const double O0sq = c.rabi0 * c.rabi0;

    const vdouble d2 = d * d;
    const vdouble Lg = d2 + 0.25 * gamma * gamma;
    const vdouble LG = d2 + 0.25 * Gamma * Gamma;
    const vdouble iLg = 1.0 / Lg;
    const vdouble iLG = 1.0 / LG;
    const vdouble iLgG = iLg * iLG;

    Row r;

    r.sc_single = 0.25 * g0 * g0 * (iLG + iLg);
    const vdouble eb1 =
        ((d2 - gG4) * Gt - d * (0.5 * gsum) * Ot) * (g0 * g0 / gsum) * iLgG;
    const vdouble eb2 = -Gt * g0 * (d2 - gG4 - 0.25 * g0 * Gamma) * iLgG;
    const vdouble eb3 = vdouble(-Gt * g0 * g0 / gsum) * iLg;
    const vdouble gb =
        ((d2 + gG4) * (Gt * g0) + d * (Ot * g0 * g0) - 0.25 * gsum * Gt * g0 * g0) *
        iLgG;
    r.sc_coll = we * (eb1 + eb2 + eb3) + wg * gb;
    r.sc_total = r.sc_single + r.sc_coll;

    const vdouble active = vdouble(g0 * wg * c.gamma_nr * 0.25) * iLG;
    const vdouble stim_single = vdouble(-g0 * we * c.pump_P * 0.25) * iLG;
    const vdouble passive = vdouble(g0 * c.gamma_nr * 0.25) * iLg;
    r.abs_single = active + stim_single + passive;
    const vdouble cga = vdouble(-we * Gt * g0 * c.gamma_nr / gsum) * iLg;
    const vdouble cgb = vdouble(-we * Gt * g0 * Gamma / gsum) * iLG;
    const vdouble ce =
        (wg * 0.5 * g0 * c.gamma_nr) * (d * Ot - 0.5 * Gamma * Gt) * iLgG;
    const vdouble sc2 =
        (wg * 0.5 * (c.pump_P + c.gamma_nr) * g0) * (d * Ot - 0.5 * gamma * Gt) * iLgG;
    r.abs_coll = cga + cgb + ce + sc2;
    r.abs_total = r.abs_single + r.abs_coll;

    r.ext_coll = r.sc_coll + r.abs_coll;
    r.ext_total = r.sc_total + r.abs_total;

    // spontaneous emission rate
    vdouble rate = g0 * (1.0 - O0sq * Gamma * Gamma / 16.0 * iLG * iLG);
    rate += vdouble(-4.0 * Gt * Gt / Gamma);
    rate += vdouble(gamma * 8.0 * (Ot * Ot + Gt * Gt) * g0 / (Gamma * gsum * gsum));
    const vdouble lasA =
        (2.0 * d * Ot + 4.0 * Gt * (d2 / Gamma + 0.25 * gamma) - gamma * Gt) * iLgG +
        (8.0 * Ot / (Gamma * gsum)) * d * iLG - (8.0 * Ot / (Gamma * gsum)) * d * iLg;
    const vdouble lasB =
        (-8.0 / (Gamma * gsum * gsum)) * (d * Ot - 0.5 * Gamma * Gt) * iLG +
        (8.0 / (Gamma * gsum * gsum)) * (d * Ot + 0.5 * gamma * Gt) * iLg -
        (2.0 / gsum) * (d * Ot * (1.0 - gamma / Gamma) + 2.0 * Gt * (d2 / Gamma + 0.25 * gamma)) *
            iLgG;
    rate += 0.25 * O0sq * (0.5 * gsum * lasA + gamma * g0 * lasB);
    r.g0_rate = we * rate;

    // resonant energy transfer rate
    const vdouble free_term = vdouble(8.0 * (Ot * Ot + Gt * Gt) / (gsum * gsum));
    const vdouble probe_term =
        (2.0 * O0sq / (gsum * gsum)) *
        ((d * Ot + 0.5 * gamma * Gt) * iLg - (d * Ot - 0.5 * Gamma * Gt) * iLG);
    r.ret = 0.5 * gsum * we * (free_term + probe_term);

    // ground-state linear-response comparator
    r.semicl = gamma * g0 * 0.5 * iLg +
               ((d2 - 0.25 * gamma * gamma) * (Gt * g0) + d * (Ot * gamma * g0)) *
                   iLg * iLg;

    r.sc_single *= c.pol;
    r.sc_coll *= c.pol;
    r.sc_total *= c.pol;
    r.abs_single *= c.pol;
    r.abs_coll *= c.pol;
    r.abs_total *= c.pol;
    r.ext_coll *= c.pol;
    r.ext_total *= c.pol;
    r.semicl *= c.pol;
    return r;
}

} // namespace

void eval_batch_simd(const ResponseContext& ctx,
                     std::span<const double> detuning,
                     const ResponseBatch& out, std::size_t offset) {
    const std::size_t W = vdouble::size();
    const std::size_t n = detuning.size();
    std::size_t i = 0;
    auto store = [&](const Row& r, std::size_t k, std::size_t count) {
        std::array<double, 16> buf;
        auto emit = [&](const vdouble& v, std::span<double> dst) {
            v.copy_to(buf.data(), stdx::element_aligned);
            for (std::size_t j = 0; j < count; ++j) dst[k + j] = buf[j];
        };
        emit(r.sc_single, out.sc_single);
        emit(r.sc_coll, out.sc_coll);
        emit(r.sc_total, out.sc_total);
        emit(r.abs_single, out.abs_single);
        emit(r.abs_coll, out.abs_coll);
        emit(r.abs_total, out.abs_total);
        emit(r.ext_coll, out.ext_coll);
        emit(r.ext_total, out.ext_total);
        emit(r.g0_rate, out.gamma0_rate);
        emit(r.ret, out.ret_rate);
        emit(r.semicl, out.semiclassical);
    };
    for (; i + W <= n; i += W) {
        vdouble d;
        d.copy_from(detuning.data() + i, stdx::element_aligned);
        store(eval_lanes(ctx, d), offset + i, W);
    }
    if (i < n) {
        // remainder through a padded full vector, so each element sees the
        // same arithmetic regardless of chunk boundaries
        std::array<double, 16> pad;
        const std::size_t rest = n - i;
        for (std::size_t j = 0; j < W; ++j)
            pad[j] = detuning[i + std::min(j, rest - 1)];
        vdouble d;
        d.copy_from(pad.data(), stdx::element_aligned);
        store(eval_lanes(ctx, d), offset + i, rest);
    }
}

bool simd_kernel_available() {
#if defined(DIMER_SIMD_COMPILED_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return true;
#endif
}

const char* simd_kernel_label() {
#if defined(DIMER_SIMD_COMPILED_AVX2)
    return "simd(avx2)";
#else
    return "simd(native)";
#endif
}

#else // !DIMER_HAVE_STD_SIMD

void eval_batch_simd(const ResponseContext& ctx,
                     std::span<const double> detuning,
                     const ResponseBatch& out, std::size_t offset) {
    eval_batch_scalar(ctx, detuning, out, offset);
}

bool simd_kernel_available() { return false; }

const char* simd_kernel_label() { return "scalar(no simd support)"; }

#endif

} // namespace dimer::kernels
