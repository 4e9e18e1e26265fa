#ifndef DIMER_RESPONSE_HPP
#define DIMER_RESPONSE_HPP

#include "dimer/coupling.hpp"
#include "dimer/params.hpp"

namespace dimer {

// Steady-state optical response of the pair, split into single-atom and
// collective parts. A term is "collective" iff it carries omega_shift or
// gamma_coll. Cross sections are in sigma0 units, rates in gamma0 units.
struct ResponseBreakdown {
    double sigma_sc_single = 0.0;
    double sigma_sc_coll = 0.0;
    double sigma_sc_total = 0.0;
    double sigma_abs_single = 0.0;
    double sigma_abs_coll = 0.0;
    double sigma_abs_total = 0.0;
    double sigma_ext_coll = 0.0;
    double sigma_ext_total = 0.0;
    double gamma0_rate = 0.0; // total spontaneous emission rate
    double ret_rate = 0.0;    // resonant energy transfer rate
    ValidityFlags validity = 0;
};

// {single, collective} scattering cross-section.
std::pair<double, double> sigma_sc(const SystemParams& p, const DipoleCoupling& c);

// {single, collective} absorption cross-section (stimulated emission enters
// with negative sign).
std::pair<double, double> sigma_abs(const SystemParams& p, const DipoleCoupling& c);

// Term-level decomposition of the absorption cross-section, labeled by
// process. single = active_abs + passive_abs + stim_single,
// collective = coll_ground_a + coll_ground_b + coll_excited + stim_coll.
struct AbsorptionTerms {
    double active_abs = 0.0;   // pumped atom, non-radiative absorption
    double passive_abs = 0.0;  // partner atom, non-radiative absorption
    double coll_ground_a = 0.0;
    double coll_ground_b = 0.0;
    double coll_excited = 0.0;
    double stim_single = 0.0;  // single-atom stimulated emission (<= 0)
    double stim_coll = 0.0;    // collective stimulated emission
};
AbsorptionTerms absorption_terms(const SystemParams& p, const DipoleCoupling& c);

// Total spontaneous emission rate of the pair, including the probe-induced
// terms proportional to rabi0^2. Carries the overall P/Gamma weight.
double gamma0_total(const SystemParams& p, const DipoleCoupling& c);

// Resonant energy transfer rate from the pumped atom to its partner.
double ret_rate(const SystemParams& p, const DipoleCoupling& c);

// Assembles the full breakdown; the _total and sigma_ext fields are exact
// sums of the parts by construction.
ResponseBreakdown sigma_ext(const SystemParams& p, const DipoleCoupling& c);

// Formula limit of sigma_ext_total for P -> infinity at resonance:
// gamma0/gamma (only the passive-atom terms survive).
double strong_pump_extinction_limit(const SystemParams& p);

} // namespace dimer

#endif
