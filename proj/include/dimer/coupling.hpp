#ifndef DIMER_COUPLING_HPP
#define DIMER_COUPLING_HPP

#include <complex>

#include "dimer/params.hpp"

namespace dimer {

// Orientation-projected free-space field propagator mu_hat.G.mu_hat,
// normalized by (4*pi/k') so it is dimensionless:
//   -e^{ix} [ sin^2(theta)/x + i(1-3cos^2(theta))/x^2 - (1-3cos^2(theta))/x^3 ]
// with x = k'R and theta the angle between mu_hat and R_hat.
struct GreenProjection {
    double x = 0.0;
    double theta = 0.0;
    double g_re = 0.0;
    double g_im = 0.0;

    std::complex<double> value() const { return {g_re, g_im}; }
};

// Throws std::domain_error for x <= 0 (the propagator is singular there).
GreenProjection green_projected(double x, double theta);

// Complex excitation-transfer rate between the two atoms,
//   Omega(R) = omega_shift - i * gamma_coll,
// in gamma0 units. Sign convention fixed by the projection above:
// gamma_coll(x -> 0+, theta = 0) = +gamma0/2.
struct DipoleCoupling {
    double omega_shift = 0.0; // dispersive dipole-dipole shift
    double gamma_coll = 0.0;  // collective decay coupling

    std::complex<double> value() const { return {omega_shift, -gamma_coll}; }
};

DipoleCoupling coupling(const SystemParams& p);
DipoleCoupling coupling_from(double x, double theta, double gamma0 = 1.0);

// Coupling evaluated at an arbitrary field frequency nu (gamma0 units),
// including the cubic photon-density weight:
//   Omega_nu(nu) = (nu/omega0)^3 * Omega(x') with x' = (nu/omega0) * k0R.
// Written in polynomial-times-phase form, it is an entire function of nu:
//   -(3 gamma0 / 4 x^3) e^{i x'} [ p x'^2 + i q x' - q ],
// p = sin^2(theta), q = 1 - 3 cos^2(theta). Used by the frequency-domain
// power checks; at nu = omega0 it reduces to coupling(p).value().
std::complex<double> coupling_at_frequency(double nu, const SystemParams& p);

// r -> 0 self-term of the same object: Im part is finite,
// -(gamma0/2)(nu/omega0)^3; the divergent Re part is excluded.
double self_im_coupling_at_frequency(double nu, const SystemParams& p);

} // namespace dimer

#endif
