#include "dimer/kernels.hpp"

#include "dimer/comparators.hpp"
#include "dimer/response.hpp"

namespace dimer::kernels {

ResponseContext ResponseContext::from(const SystemParams& p,
                                      const DipoleCoupling& c) {
    ResponseContext ctx;
    ctx.gamma0 = p.gamma0;
    ctx.gamma = p.gamma_total();
    ctx.Gamma = p.pumped_width();
    ctx.gamma_nr = p.gamma_nr;
    ctx.pump_P = p.pump_P;
    ctx.rabi0 = p.rabi0;
    ctx.pol = p.pol_overlap;
    ctx.omega_shift = c.omega_shift;
    ctx.gamma_coll = c.gamma_coll;
    return ctx;
}

void eval_batch_scalar(const ResponseContext& ctx,
                       std::span<const double> detuning,
                       const ResponseBatch& out, std::size_t offset) {
    SystemParams p;
    p.gamma0 = ctx.gamma0;
    p.gamma_nr = ctx.gamma_nr;
    p.pump_P = ctx.pump_P;
    p.rabi0 = ctx.rabi0;
    p.pol_overlap = ctx.pol;
    const DipoleCoupling c{ctx.omega_shift, ctx.gamma_coll};
    for (std::size_t i = 0; i < detuning.size(); ++i) {
        p.detuning = detuning[i];
        const ResponseBreakdown r = sigma_ext(p, c);
        const std::size_t k = offset + i;
        out.sc_single[k] = r.sigma_sc_single;
        out.sc_coll[k] = r.sigma_sc_coll;
        out.sc_total[k] = r.sigma_sc_total;
        out.abs_single[k] = r.sigma_abs_single;
        out.abs_coll[k] = r.sigma_abs_coll;
        out.abs_total[k] = r.sigma_abs_total;
        out.ext_coll[k] = r.sigma_ext_coll;
        out.ext_total[k] = r.sigma_ext_total;
        out.gamma0_rate[k] = r.gamma0_rate;
        out.ret_rate[k] = r.ret_rate;
        out.semiclassical[k] = semiclassical_sigma_sc(p, c);
    }
}

} // namespace dimer::kernels
