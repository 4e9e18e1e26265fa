#ifndef DIMER_COMPARATORS_HPP
#define DIMER_COMPARATORS_HPP

#include <complex>
#include <vector>

#include "dimer/coupling.hpp"
#include "dimer/params.hpp"

namespace dimer {

// Ground-state linear polarizability of a two-level atom, normalized by
// mu^2/(hbar*gamma0):  alpha(omega) = 1 / (detuning + i*gamma/2).
struct Polarizability {
    std::complex<double> value{};
};

Polarizability polarizability(const SystemParams& p);

// Scattering cross-section of the pair from classical linear response with
// the ground-state polarizability (sigma0 units). Valid comparator at P = 0;
// the pump is ignored by construction.
double semiclassical_sigma_sc(const SystemParams& p, const DipoleCoupling& c);

struct TrajectoryPoint {
    double t = 0.0;
    Populations pops{};
};

// Fixed-step RK4 integration of the two-level rate equations
//   d rho_ee/dt = P rho_gg - gamma rho_ee,
//   d rho_gg/dt = gamma rho_ee - P rho_gg.
// Deliberately contains no exponential solution, so it is an independent
// check of populations_at. Throws std::invalid_argument if dt > 0.01/Gamma
// or the time range is empty.
std::vector<TrajectoryPoint> rate_equation_integrate(const SystemParams& p,
                                                     double t_end, double dt);

} // namespace dimer

#endif
