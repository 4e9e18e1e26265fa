#include "dimer/comparators.hpp"

#include <cmath>
#include <stdexcept>

namespace dimer {

Polarizability polarizability(const SystemParams& p) {
    const double gamma = p.gamma_total();
    return Polarizability{1.0 / std::complex<double>(p.detuning, 0.5 * gamma)};
}

double semiclassical_sigma_sc(const SystemParams& p, const DipoleCoupling& c) {
    const double g0 = p.gamma0;
    const double gamma = p.gamma_total();
    const double d = p.detuning;
    const double L = d * d + 0.25 * gamma * gamma;
    const double value =
        gamma * g0 / (2.0 * L) +
        ((d * d - 0.25 * gamma * gamma) * c.gamma_coll * g0 +
         d * c.omega_shift * gamma * g0) /
            (L * L);
    return p.pol_overlap * value;
}

std::vector<TrajectoryPoint> rate_equation_integrate(const SystemParams& p,
                                                     double t_end, double dt) {
    const double gamma = p.gamma_total();
    const double P = p.pump_P;
    const double Gamma = p.pumped_width();
    if (!(t_end > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("rate_equation_integrate: need t_end > 0 and dt > 0");
    if (dt > 0.01 / Gamma)
        throw std::invalid_argument(
            "rate_equation_integrate: dt too large for stable integration, "
            "require dt <= 0.01/Gamma");

    // two-channel form; the sum rho_ee + rho_gg is a linear invariant and is
    // preserved exactly by the stages
    auto deriv = [&](double ee, double gg, double& dee, double& dgg) {
        dee = P * gg - gamma * ee;
        dgg = gamma * ee - P * gg;
    };

    const double ne0 = p.initial_excited();
    double ee = ne0;
    double gg = 1.0 - ne0;
    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));

    std::vector<TrajectoryPoint> traj;
    traj.reserve(n_steps + 1);
    traj.push_back({0.0, {ee, gg}});
    double t = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double h = std::min(dt, t_end - t);
        double k1e, k1g, k2e, k2g, k3e, k3g, k4e, k4g;
        deriv(ee, gg, k1e, k1g);
        deriv(ee + 0.5 * h * k1e, gg + 0.5 * h * k1g, k2e, k2g);
        deriv(ee + 0.5 * h * k2e, gg + 0.5 * h * k2g, k3e, k3g);
        deriv(ee + h * k3e, gg + h * k3g, k4e, k4g);
        ee += h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
        gg += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        t += h;
        traj.push_back({t, {ee, gg}});
    }
    return traj;
}

} // namespace dimer
