#ifndef DIMER_PARAMS_HPP
#define DIMER_PARAMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dimer {

// Validity advisories. These annotate results instead of rejecting inputs:
// the boundary region is explorable, the flags just mark where the
// leading-order treatment starts to degrade.
enum ValidityFlag : std::uint32_t {
    kWeakProbeViolated = 1u << 0,        // rabi0 >= 0.1 * Gamma
    kBelowPerturbativeCutoff = 1u << 1,  // k0R < 2
};
using ValidityFlags = std::uint32_t;

std::vector<std::string> describe_validity(ValidityFlags flags);

// All inputs of the model, in units of the natural width gamma0 = 1.
// Distances are k0*R, cross sections come out in units of sigma0.
// Immutable by convention after validate(); all operations on it are pure.
struct SystemParams {
    double gamma0 = 1.0;      // natural radiative width of e -> g (unit)
    double gamma_nr = 0.0;    // non-radiative decay rate
    double pump_P = 0.0;      // effective incoherent pump rate P
    double omega0 = 2000.0;   // transition frequency; only sets sigma0 scaling
                              // and the quasi-resonant frequency scale
    double detuning = 0.0;    // probe detuning, omega - omega0
    double rabi0 = 0.0;       // probe Rabi frequency Omega0
    double k0R = 2.0;         // interatomic distance in 1/k0 units
    double theta = 0.0;       // angle between dipole axis and interatomic axis
    double pol_overlap = 1.0; // (mu_hat . eps_hat)^2, scales sigma columns
    std::optional<double> Ne0{}; // initial excited population of the pumped
                                 // atom; defaults to the steady value P/Gamma

    double gamma_total() const { return gamma0 + gamma_nr; }          // gamma
    double pumped_width() const { return gamma_total() + pump_P; }    // Gamma
    double probe_frequency() const { return omega0 + detuning; }      // omega
    double initial_excited() const {
        return Ne0 ? *Ne0 : pump_P / pumped_width();
    }

    ValidityFlags validity() const;
    // Throws std::invalid_argument on out-of-domain values. Validity
    // advisories are not errors.
    void validate() const;
    static SystemParams checked(SystemParams p);

    // Convenience constructor for a pump specified through the auxiliary
    // transition: P = omega_p^2 / gamma_u.
    static SystemParams from_pump_laser(double rabi_pump, double gamma_u);
    static SystemParams from_pump_laser(double rabi_pump, double gamma_u,
                                        SystemParams base);

    bool operator==(const SystemParams&) const = default;
};

std::pair<double, double> derived_rates(const SystemParams& p); // {gamma, Gamma}

struct Populations {
    double rho_ee = 0.0;
    double rho_gg = 1.0;
};

struct SteadyWeights {
    double w_g = 1.0; // gamma / Gamma
    double w_e = 0.0; // P / Gamma
};

// Level populations of the pumped atom at time t (units 1/gamma0), from the
// closed-form solution of the two-level rate equations.
Populations populations_at(const SystemParams& p, double t);

SteadyWeights steady_weights(const SystemParams& p);

} // namespace dimer

#endif
