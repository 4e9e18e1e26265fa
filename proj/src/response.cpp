#include "dimer/response.hpp"

namespace dimer {

namespace {

// Shared pieces of the steady-state line shapes.
struct Lineshape {
    double g0, gnr, P, gamma, Gamma, delta;
    double Lg;  // delta^2 + gamma^2/4
    double LG;  // delta^2 + Gamma^2/4
    double wg;  // gamma/Gamma
    double we;  // P/Gamma
    double gsum; // gamma + Gamma

    explicit Lineshape(const SystemParams& p)
        : g0(p.gamma0), gnr(p.gamma_nr), P(p.pump_P), gamma(p.gamma_total()),
          Gamma(p.pumped_width()), delta(p.detuning),
          Lg(delta * delta + 0.25 * gamma * gamma),
          LG(delta * delta + 0.25 * Gamma * Gamma),
          wg(gamma / Gamma), we(P / Gamma), gsum(gamma + Gamma) {}
};

} // namespace

std::pair<double, double> sigma_sc(const SystemParams& p, const DipoleCoupling& c) {
    const Lineshape l(p);
    const double Ot = c.omega_shift;
    const double Gt = c.gamma_coll;
    const double d2 = l.delta * l.delta;

    const double single = l.g0 * l.g0 / (4.0 * l.LG) + l.g0 * l.g0 / (4.0 * l.Lg);

    // pumped-population bracket
    const double eb1 = ((d2 - 0.25 * l.gamma * l.Gamma) * Gt -
                        l.delta * 0.5 * l.gsum * Ot) *
                       l.g0 * l.g0 / (l.gsum * l.LG * l.Lg);
    const double eb2 = -Gt * l.g0 *
                       (d2 - 0.25 * l.gamma * l.Gamma - 0.25 * l.g0 * l.Gamma) /
                       (l.LG * l.Lg);
    const double eb3 = -Gt * l.g0 * l.g0 / (l.gsum * l.Lg);

    // ground-population bracket
    const double gb = ((d2 + 0.25 * l.gamma * l.Gamma) * Gt * l.g0 +
                       l.delta * Ot * l.g0 * l.g0 -
                       0.25 * l.gsum * Gt * l.g0 * l.g0) /
                      (l.LG * l.Lg);

    const double coll = l.we * (eb1 + eb2 + eb3) + l.wg * gb;
    return {p.pol_overlap * single, p.pol_overlap * coll};
}

AbsorptionTerms absorption_terms(const SystemParams& p, const DipoleCoupling& c) {
    const Lineshape l(p);
    const double Ot = c.omega_shift;
    const double Gt = c.gamma_coll;

    AbsorptionTerms t;
    t.active_abs = l.g0 * l.wg * l.gnr / (4.0 * l.LG);
    t.stim_single = -l.g0 * l.we * l.P / (4.0 * l.LG);
    t.passive_abs = l.g0 * l.gnr / (4.0 * l.Lg);
    t.coll_ground_a = -l.we * Gt * l.g0 * l.gnr / (l.gsum * l.Lg);
    t.coll_ground_b = -l.we * Gt * l.g0 * l.Gamma / (l.gsum * l.LG);
    t.coll_excited = l.wg * (l.delta * Ot - 0.5 * l.Gamma * Gt) * l.g0 * l.gnr /
                     (2.0 * l.LG * l.Lg);
    t.stim_coll = l.wg * (l.delta * Ot - 0.5 * l.gamma * Gt) * (l.P + l.gnr) *
                  l.g0 / (2.0 * l.LG * l.Lg);

    t.active_abs *= p.pol_overlap;
    t.stim_single *= p.pol_overlap;
    t.passive_abs *= p.pol_overlap;
    t.coll_ground_a *= p.pol_overlap;
    t.coll_ground_b *= p.pol_overlap;
    t.coll_excited *= p.pol_overlap;
    t.stim_coll *= p.pol_overlap;
    return t;
}

std::pair<double, double> sigma_abs(const SystemParams& p, const DipoleCoupling& c) {
    const AbsorptionTerms t = absorption_terms(p, c);
    const double single = t.active_abs + t.stim_single + t.passive_abs;
    const double coll = t.coll_ground_a + t.coll_ground_b + t.coll_excited + t.stim_coll;
    return {single, coll};
}

double gamma0_total(const SystemParams& p, const DipoleCoupling& c) {
    const Lineshape l(p);
    const double Ot = c.omega_shift;
    const double Gt = c.gamma_coll;
    const double O0sq = p.rabi0 * p.rabi0;
    const double d = l.delta;
    const double d2 = d * d;

    // probe-free terms
    double rate = l.g0 * (1.0 - O0sq * l.Gamma * l.Gamma / (16.0 * l.LG * l.LG));
    rate += -0.5 * l.gsum * 8.0 * Gt * Gt / (l.Gamma * l.gsum);
    rate += l.gamma * 8.0 * (Ot * Ot + Gt * Gt) * l.g0 / (l.Gamma * l.gsum * l.gsum);

    // probe-induced terms, O(rabi0^2)
    const double lasA =
        (2.0 * d * Ot + 4.0 * Gt * (d2 / l.Gamma + 0.25 * l.gamma) - l.gamma * Gt) /
            (l.Lg * l.LG) +
        8.0 * d * Ot / (l.Gamma * l.gsum * l.LG) -
        8.0 * d * Ot / (l.Gamma * l.gsum * l.Lg);
    const double lasB =
        -8.0 * (d * Ot - 0.5 * l.Gamma * Gt) / (l.Gamma * l.gsum * l.gsum * l.LG) +
        8.0 * (d * Ot + 0.5 * l.gamma * Gt) / (l.Gamma * l.gsum * l.gsum * l.Lg) -
        2.0 * (d * Ot * (1.0 - l.gamma / l.Gamma) +
               2.0 * Gt * (d2 / l.Gamma + 0.25 * l.gamma)) /
            (l.gsum * l.Lg * l.LG);
    rate += 0.25 * O0sq * (0.5 * l.gsum * lasA + l.gamma * l.g0 * lasB);

    return l.we * rate;
}

double ret_rate(const SystemParams& p, const DipoleCoupling& c) {
    const Lineshape l(p);
    const double Ot = c.omega_shift;
    const double Gt = c.gamma_coll;
    const double O0sq = p.rabi0 * p.rabi0;
    const double d = l.delta;

    const double free_term = 8.0 * (Ot * Ot + Gt * Gt) / (l.gsum * l.gsum);
    const double probe_term =
        2.0 * O0sq * ((d * Ot + 0.5 * l.gamma * Gt) / (l.gsum * l.gsum * l.Lg) -
                      (d * Ot - 0.5 * l.Gamma * Gt) / (l.gsum * l.gsum * l.LG));
    return 0.5 * l.gsum * l.we * (free_term + probe_term);
}

ResponseBreakdown sigma_ext(const SystemParams& p, const DipoleCoupling& c) {
    ResponseBreakdown r;
    const auto [sc_s, sc_c] = sigma_sc(p, c);
    const auto [abs_s, abs_c] = sigma_abs(p, c);
    r.sigma_sc_single = sc_s;
    r.sigma_sc_coll = sc_c;
    r.sigma_sc_total = sc_s + sc_c;
    r.sigma_abs_single = abs_s;
    r.sigma_abs_coll = abs_c;
    r.sigma_abs_total = abs_s + abs_c;
    r.sigma_ext_coll = sc_c + abs_c;
    r.sigma_ext_total = r.sigma_sc_total + r.sigma_abs_total;
    r.gamma0_rate = gamma0_total(p, c);
    r.ret_rate = ret_rate(p, c);
    r.validity = p.validity();
    return r;
}

double strong_pump_extinction_limit(const SystemParams& p) {
    return p.pol_overlap * p.gamma0 / p.gamma_total();
}

} // namespace dimer
