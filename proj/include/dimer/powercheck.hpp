#ifndef DIMER_POWERCHECK_HPP
#define DIMER_POWERCHECK_HPP

#include <stdexcept>
#include <string>

#include "dimer/coupling.hpp"
#include "dimer/params.hpp"

namespace dimer {

// Emission/absorption power channels with printed closed forms that can be
// cross-checked against direct quadrature of their frequency-integral
// representations. Case ids follow the external report schema.
enum class PowerCase { W2, W4, W9, W12 };

const char* to_string(PowerCase c);

// Closed-form channel power, in units hbar = gamma0 = 1 (the probe photon
// energy factor ~omega is kept, so values scale with omega0).
//   W2 : scattering with the emitted photon exchanged between the atoms
//   W4 : scattering with emission created/annihilated at the partner atom
//        (self-field factor taken at its finite r -> 0 limit)
//   W9 : absorption through transient excitation of the partner atom
//   W12: collective stimulated emission into the probe mode
double closed_form_power(PowerCase c, const SystemParams& p,
                         const DipoleCoupling& cp);

struct QuadratureSettings {
    double level = 1.0;          // node-density multiplier
    double rel_self_check = 1e-3; // max allowed drift when doubling nodes
    bool self_check = true;
};

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_rel_delta(achieved) {}
    double achieved_rel_delta = 0.0;
};

// Evaluates the channel's frequency-integral representation numerically at a
// finite observation time t_obs, with the time derivative applied
// analytically, poles kept at their stated imaginary displacements, results
// averaged over one probe period, and the oscillatory large-frequency growth
// regulated by a smooth window. Requires t_obs * gamma >= 10. Throws
// QuadratureError when doubling the node count moves the estimate by more
// than settings.rel_self_check (relative).
double numeric_power(PowerCase c, const SystemParams& p, double t_obs,
                     const QuadratureSettings& settings = {});

struct OracleReport {
    PowerCase case_id = PowerCase::W2;
    SystemParams params{};
    double closed_form = 0.0;
    double numeric = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// Runs one closed-form-vs-quadrature comparison. t_obs <= 0 selects the
// default 50/gamma. Quadrature non-convergence is reported as a failed
// record, not an exception.
OracleReport run_power_check(PowerCase c, const SystemParams& p,
                             double tolerance = 0.02, double t_obs = -1.0,
                             const QuadratureSettings& settings = {});

std::string oracle_report_json(const OracleReport& r);

} // namespace dimer

#endif
