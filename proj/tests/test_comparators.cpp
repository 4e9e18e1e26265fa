#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dimer/comparators.hpp"
#include "dimer/response.hpp"

using namespace dimer;

namespace {
SystemParams make(double gnr, double P) {
    SystemParams p;
    p.gamma_nr = gnr;
    p.pump_P = P;
    return p;
}
} // namespace

TEST_CASE("polarizability pole sits at -i*gamma/2") {
    SystemParams p = make(0.2, 0.0);
    // 1/alpha is linear in the detuning with imaginary part gamma/2
    for (double d : {-2.0, 0.0, 0.5, 3.0}) {
        p.detuning = d;
        const auto inv = 1.0 / polarizability(p).value;
        CHECK(inv.real() == doctest::Approx(d).epsilon(1e-12));
        CHECK(inv.imag() == doctest::Approx(0.6).epsilon(1e-12));
    }
}

TEST_CASE("linear-response cross-section limits") {
    SystemParams p = make(0.0, 0.0);
    p.k0R = 1e6;
    CHECK(semiclassical_sigma_sc(p, coupling(p)) ==
          doctest::Approx(2.0).epsilon(1e-10));
    p.gamma_nr = 0.2;
    CHECK(semiclassical_sigma_sc(p, coupling(p)) ==
          doctest::Approx(2.0 / 1.2).epsilon(1e-10));
}

TEST_CASE("linear response reproduces unpumped extinction but not its split") {
    // At P = 0 the classical cross-section equals the quantum
    // scattering-plus-absorption total for any gamma_nr; what it cannot do
    // is tell scattering from absorption, so it disagrees with the quantum
    // scattering total as soon as the non-radiative channel is open.
    SystemParams p = make(0.2, 0.0);
    p.k0R = 2.0;
    const DipoleCoupling c = coupling(p);
    const ResponseBreakdown r = sigma_ext(p, c);
    const double classical = semiclassical_sigma_sc(p, c);
    CHECK(std::abs(r.sigma_ext_total - classical) <= 1e-12 * std::abs(classical));
    CHECK(std::abs(r.sigma_sc_total - classical) > 1e-6);

    // without the non-radiative channel the quantum total is pure
    // scattering and the two routes agree term by term
    SystemParams lossless = make(0.0, 0.0);
    lossless.k0R = 2.0;
    for (double d = -6.0; d <= 6.0; d += 0.25) {
        lossless.detuning = d;
        const DipoleCoupling cl = coupling(lossless);
        const ResponseBreakdown rl = sigma_ext(lossless, cl);
        const double cls = semiclassical_sigma_sc(lossless, cl);
        CHECK(std::abs(rl.sigma_ext_total - cls) <= 1e-12 * std::abs(cls));
        CHECK(std::abs(rl.sigma_sc_total - cls) <= 1e-12 * std::abs(cls));
    }
}

TEST_CASE("integrator rejects unstable steps and bad ranges") {
    const SystemParams p = make(0.2, 1.2);
    CHECK_THROWS_AS(rate_equation_integrate(p, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(rate_equation_integrate(p, 0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(rate_equation_integrate(p, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("pure decay trajectory") {
    SystemParams p = make(0.0, 0.0);
    p.Ne0 = 1.0;
    const auto traj = rate_equation_integrate(p, 1.0, 0.002);
    const auto& last = traj.back();
    CHECK(last.t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(last.pops.rho_ee == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("integrator matches the closed form along the trajectory") {
    const double cases[][3] = {{0.0, 0.0, 1.0},
                               {0.2, 1.2, 0.0},
                               {0.2, 7.5, 0.25},
                               {1.0, 0.5, 0.8},
                               {0.0, 20.0, 0.0}};
    for (const auto& cs : cases) {
        SystemParams p = make(cs[0], cs[1]);
        p.Ne0 = cs[2];
        const double Gamma = p.pumped_width();
        const auto traj = rate_equation_integrate(p, 20.0 / Gamma, 0.005 / Gamma);
        const std::size_t stride = traj.size() / 100;
        for (std::size_t i = 0; i < traj.size(); i += stride) {
            const Populations ref = populations_at(p, traj[i].t);
            CHECK(std::abs(traj[i].pops.rho_ee - ref.rho_ee) <= 1e-9);
            CHECK(std::abs(traj[i].pops.rho_gg - ref.rho_gg) <= 1e-9);
        }
    }
}

TEST_CASE("integrator reaches the steady mixture") {
    SystemParams p = make(0.2, 1.2);
    p.Ne0 = 0.0;
    const double Gamma = p.pumped_width();
    const auto traj = rate_equation_integrate(p, 100.0 / Gamma, 0.01 / Gamma);
    CHECK(traj.back().pops.rho_ee == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("fourth-order convergence") {
    SystemParams p = make(0.2, 1.2);
    p.Ne0 = 0.9;
    const double Gamma = p.pumped_width();
    auto max_err = [&](double dt) {
        const auto traj = rate_equation_integrate(p, 20.0 / Gamma, dt);
        double worst = 0.0;
        for (const auto& pt : traj) {
            const Populations ref = populations_at(p, pt.t);
            worst = std::max(worst, std::abs(pt.pops.rho_ee - ref.rho_ee));
        }
        return worst;
    };
    // halving dt gains at least 8x until roundoff floors the error; require
    // at least two verified halvings across the decade below the step cap
    double dt = 0.01 / Gamma;
    double prev = max_err(dt);
    int verified = 0;
    for (int i = 0; i < 3; ++i) {
        dt *= 0.5;
        const double cur = max_err(dt);
        if (prev > 1e-13) {
            CHECK(cur * 8.0 <= prev);
            ++verified;
        }
        prev = cur;
    }
    CHECK(verified >= 2);
}
