#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dimer/params.hpp"

using namespace dimer;

namespace {
SystemParams make(double gnr, double P) {
    SystemParams p;
    p.gamma_nr = gnr;
    p.pump_P = P;
    return p;
}
} // namespace

TEST_CASE("derived rates") {
    auto [g1, G1] = derived_rates(make(0.0, 0.0));
    CHECK(g1 == 1.0);
    CHECK(G1 == 1.0);
    auto [g2, G2] = derived_rates(make(0.2, 1.2));
    CHECK(g2 == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(G2 == doctest::Approx(2.4).epsilon(1e-15));
    auto [g3, G3] = derived_rates(make(0.2, 7.5));
    CHECK(g3 == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(G3 == doctest::Approx(8.7).epsilon(1e-15));
}

TEST_CASE("populations: initial condition and relaxation") {
    SystemParams p = make(0.2, 1.2);
    p.Ne0 = 0.3;
    const Populations at0 = populations_at(p, 0.0);
    CHECK(at0.rho_ee == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(at0.rho_gg == doctest::Approx(0.7).epsilon(1e-15));

    // long-time limit reaches the steady mixture
    const Populations late = populations_at(p, 50.0 / p.gamma_total());
    CHECK(late.rho_ee == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(late.rho_gg == doctest::Approx(0.5).epsilon(1e-9));

    // pure decay without pump
    SystemParams decay = make(0.0, 0.0);
    decay.Ne0 = 1.0;
    CHECK(populations_at(decay, 1.0).rho_ee ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("populations conserve probability on a log time grid") {
    SystemParams p = make(0.2, 7.5);
    p.Ne0 = 0.1;
    for (double t = 1e-4; t <= 100.0; t *= 1.3) {
        const Populations pops = populations_at(p, t);
        CHECK(std::abs(pops.rho_ee + pops.rho_gg - 1.0) <= 1e-12);
    }
}

TEST_CASE("relaxation toward the steady value is monotone") {
    SystemParams p = make(0.2, 1.2);
    p.Ne0 = 0.9;
    const double target = p.pump_P / p.pumped_width();
    double prev = std::abs(populations_at(p, 0.0).rho_ee - target);
    for (double t = 0.05; t <= 20.0; t += 0.05) {
        const double cur = std::abs(populations_at(p, t).rho_ee - target);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("steady weights") {
    const SteadyWeights unpumped = steady_weights(make(0.0, 0.0));
    CHECK(unpumped.w_g == 1.0);
    CHECK(unpumped.w_e == 0.0);

    const SteadyWeights balanced = steady_weights(make(0.2, 1.2));
    CHECK(balanced.w_g == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(balanced.w_e == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(balanced.w_g + balanced.w_e == 1.0);

    const SteadyWeights saturated = steady_weights(make(0.0, 1e6));
    CHECK(saturated.w_e > 1.0 - 2e-6);

    // steady weights equal long-time populations
    SystemParams p = make(0.2, 1.2);
    p.Ne0 = 0.0;
    const Populations late = populations_at(p, 100.0 / p.pumped_width());
    const SteadyWeights w = steady_weights(p);
    CHECK(late.rho_ee == doctest::Approx(w.w_e).epsilon(1e-9));
    CHECK(late.rho_gg == doctest::Approx(w.w_g).epsilon(1e-9));
}

TEST_CASE("Ne0 defaults to the steady excited population") {
    SystemParams p = make(0.2, 1.2);
    CHECK(p.initial_excited() == doctest::Approx(0.5).epsilon(1e-15));
    const Populations pops = populations_at(p, 0.123);
    CHECK(pops.rho_ee == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pump laser convenience constructor") {
    const SystemParams p = SystemParams::from_pump_laser(3.0, 100.0);
    CHECK(p.pump_P == doctest::Approx(0.09).epsilon(1e-15));
    CHECK_THROWS_AS(SystemParams::from_pump_laser(1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("validation rejects bad domains, warns on advisories") {
    SystemParams p;
    p.gamma_nr = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.k0R = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.pol_overlap = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.Ne0 = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = {};
    p.k0R = 1.5;
    p.rabi0 = 0.5; // Gamma = 1, not weak
    p.validate();  // advisories never throw
    const ValidityFlags f = p.validity();
    CHECK((f & kWeakProbeViolated) != 0);
    CHECK((f & kBelowPerturbativeCutoff) != 0);
    CHECK(describe_validity(f).size() == 2);

    p = {};
    CHECK(p.validity() == 0);
}
