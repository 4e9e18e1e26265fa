#include "dimer/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace dimer {

GreenProjection green_projected(double x, double theta) {
    if (!(x > 0.0))
        throw std::domain_error("green_projected: requires x > 0");
    const double s2 = std::sin(theta) * std::sin(theta); // mu.P.mu
    const double c = std::cos(theta);
    const double q = 1.0 - 3.0 * c * c;                  // mu.Q.mu
    // -e^{ix} [ s2/x + i q/x^2 - q/x^3 ]
    const std::complex<double> phase{std::cos(x), std::sin(x)};
    const std::complex<double> bracket{s2 / x - q / (x * x * x),
                                       q / (x * x)};
    const std::complex<double> g = -phase * bracket;
    return GreenProjection{x, theta, g.real(), g.imag()};
}

DipoleCoupling coupling_from(double x, double theta, double gamma0) {
    const GreenProjection g = green_projected(x, theta);
    // Omega = (3 gamma0 / 4) * normalized projection
    const std::complex<double> omega = 0.75 * gamma0 * g.value();
    return DipoleCoupling{omega.real(), -omega.imag()};
}

DipoleCoupling coupling(const SystemParams& p) {
    return coupling_from(p.k0R, p.theta, p.gamma0);
}

std::complex<double> coupling_at_frequency(double nu, const SystemParams& p) {
    const double x = p.k0R;
    const double xp = (nu / p.omega0) * x;
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const double c = std::cos(p.theta);
    const double q = 1.0 - 3.0 * c * c;
    const std::complex<double> phase{std::cos(xp), std::sin(xp)};
    const std::complex<double> poly{s2 * xp * xp - q, q * xp};
    return -(0.75 * p.gamma0 / (x * x * x)) * phase * poly;
}

double self_im_coupling_at_frequency(double nu, const SystemParams& p) {
    const double r = nu / p.omega0;
    return -0.5 * p.gamma0 * r * r * r;
}

} // namespace dimer
