#ifndef DIMER_CHECKS_HPP
#define DIMER_CHECKS_HPP

#include <complex>
#include <string>
#include <vector>

#include "dimer/params.hpp"

namespace dimer {

struct CheckResult {
    std::string name{};
    bool passed = false;
    std::string detail{};  // one human-readable line
    std::string json{};    // machine-readable record (one JSON object)
};

struct CheckOptions {
    double quad_tol = 0.02;   // tolerance for the power quadrature checks
    std::string filter{};     // substring filter on check names
    int threads = 0;
    double quad_level = 1.0;  // node-density multiplier
};

// Full verification suite: closed-form identities, limits, population and
// coupling oracles, power quadrature checks, figure-grid assertions and
// thread-count determinism. Names are stable so callers can filter.
std::vector<CheckResult> run_checks(const CheckOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

// Independent evaluation of the projected field propagator through explicit
// 3x3 projector tensors and a unit-vector contraction. Oracle counterpart of
// green_projected; lives here to stay off the implementation path it checks.
std::complex<double> green_projected_tensor_oracle(double x, double theta);

} // namespace dimer

#endif
