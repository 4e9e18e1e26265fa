#include "dimer/params.hpp"

#include <cmath>
#include <stdexcept>

namespace dimer {

std::vector<std::string> describe_validity(ValidityFlags flags) {
    std::vector<std::string> out;
    if (flags & kWeakProbeViolated)
        out.push_back("probe not weak: rabi0 >= 0.1*Gamma, leading-order response degraded");
    if (flags & kBelowPerturbativeCutoff)
        out.push_back("k0R below the perturbative cutoff k0R >= 2, couplings may exceed gamma0");
    return out;
}

ValidityFlags SystemParams::validity() const {
    ValidityFlags f = 0;
    if (rabi0 > 0.0 && rabi0 >= 0.1 * pumped_width()) f |= kWeakProbeViolated;
    if (k0R < 2.0) f |= kBelowPerturbativeCutoff;
    return f;
}

void SystemParams::validate() const {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("SystemParams: " + what);
    };
    auto finite = [&](double v, const char* name) {
        if (!std::isfinite(v)) bad(std::string(name) + " must be finite");
    };
    finite(gamma0, "gamma0");
    finite(gamma_nr, "gamma_nr");
    finite(pump_P, "pump_P");
    finite(omega0, "omega0");
    finite(detuning, "detuning");
    finite(rabi0, "rabi0");
    finite(k0R, "k0R");
    finite(theta, "theta");
    finite(pol_overlap, "pol_overlap");
    if (gamma0 <= 0.0) bad("gamma0 must be > 0");
    if (gamma_nr < 0.0) bad("gamma_nr must be >= 0");
    if (pump_P < 0.0) bad("pump_P must be >= 0");
    if (rabi0 < 0.0) bad("rabi0 must be >= 0");
    if (k0R <= 0.0) bad("k0R must be > 0");
    if (omega0 <= 0.0) bad("omega0 must be > 0");
    if (pol_overlap < 0.0 || pol_overlap > 1.0) bad("pol_overlap must be in [0,1]");
    if (Ne0 && (!std::isfinite(*Ne0) || *Ne0 < 0.0 || *Ne0 > 1.0))
        bad("Ne0 must be in [0,1]");
}

SystemParams SystemParams::checked(SystemParams p) {
    p.validate();
    return p;
}

SystemParams SystemParams::from_pump_laser(double rabi_pump, double gamma_u) {
    return from_pump_laser(rabi_pump, gamma_u, SystemParams{});
}

SystemParams SystemParams::from_pump_laser(double rabi_pump, double gamma_u,
                                           SystemParams base) {
    if (gamma_u <= 0.0)
        throw std::invalid_argument("from_pump_laser: gamma_u must be > 0");
    base.pump_P = rabi_pump * rabi_pump / gamma_u;
    base.validate();
    return base;
}

std::pair<double, double> derived_rates(const SystemParams& p) {
    return {p.gamma_total(), p.pumped_width()};
}

Populations populations_at(const SystemParams& p, double t) {
    const double Gamma = p.pumped_width();
    const double gamma = p.gamma_total();
    const double ne0 = p.initial_excited();
    const double decay = std::exp(-Gamma * t);
    Populations pops;
    pops.rho_ee = (p.pump_P / Gamma) * (1.0 - decay) + ne0 * decay;
    pops.rho_gg = (gamma / Gamma) * (1.0 - decay) + (1.0 - ne0) * decay;
    return pops;
}

SteadyWeights steady_weights(const SystemParams& p) {
    const double Gamma = p.pumped_width();
    return {p.gamma_total() / Gamma, p.pump_P / Gamma};
}

} // namespace dimer
