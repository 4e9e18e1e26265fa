#include "dimer/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dimer/comparators.hpp"
#include "dimer/coupling.hpp"
#include "dimer/kernels.hpp"
#include "dimer/powercheck.hpp"
#include "dimer/response.hpp"
#include "dimer/sweep.hpp"

namespace dimer {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult make_result(const std::string& name, bool passed,
                        const std::string& detail, json data) {
    data["check"] = name;
    data["passed"] = passed;
    CheckResult r;
    r.name = name;
    r.passed = passed;
    r.detail = detail;
    r.json = data.dump();
    return r;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
    return v;
}

CheckResult check_semiclassical_identity() {
    const auto t0 = Clock::now();
    const auto deltas = linspace(-10.0, 10.0, 101);
    const auto xs = linspace(2.0, 20.0, 100);
    double worst = 0.0;
    double worst_d = 0.0, worst_x = 0.0;
    SystemParams p;
    p.gamma_nr = 0.0;
    p.pump_P = 0.0;
    for (double x : xs) {
        p.k0R = x;
        const DipoleCoupling c = coupling(p);
        for (double d : deltas) {
            p.detuning = d;
            const auto [s, cc] = sigma_sc(p, c);
            const double quantum = s + cc;
            const double classical = semiclassical_sigma_sc(p, c);
            const double rel = std::abs(quantum - classical) /
                               std::max(std::abs(classical), 1e-300);
            if (rel > worst) {
                worst = rel;
                worst_d = d;
                worst_x = x;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = worst <= 1e-12 && elapsed < 5.0;
    std::ostringstream det;
    det << "max rel diff " << worst << " at (detuning=" << worst_d
        << ", k0R=" << worst_x << ") over 10100 points, " << elapsed << " s";
    return make_result("semiclassical_identity", ok, det.str(),
                       {{"max_rel_err", worst},
                        {"tolerance", 1e-12},
                        {"points", 10100},
                        {"elapsed_s", elapsed}});
}

CheckResult check_absorption_positivity() {
    const auto deltas = linspace(-10.0, 10.0, 101);
    const auto xs = linspace(2.0, 20.0, 100);
    double min_abs = 1e300;
    double w_d = 0, w_x = 0, w_g = 0;
    SystemParams p;
    p.pump_P = 0.0;
    for (double gnr : {0.0, 0.2, 1.0}) {
        p.gamma_nr = gnr;
        for (double x : xs) {
            p.k0R = x;
            const DipoleCoupling c = coupling(p);
            for (double d : deltas) {
                p.detuning = d;
                const auto [s, cc] = sigma_abs(p, c);
                const double tot = s + cc;
                if (tot < min_abs) {
                    min_abs = tot;
                    w_d = d;
                    w_x = x;
                    w_g = gnr;
                }
            }
        }
    }
    const bool ok = min_abs >= -1e-12;
    std::ostringstream det;
    det << "min sigma_abs_total = " << min_abs << " sigma0 at (gamma_nr=" << w_g
        << ", k0R=" << w_x << ", detuning=" << w_d << ")";
    if (!ok)
        det << "; zero-pump absorption goes negative where the collective "
               "decay coupling exceeds gamma/4 near the k0R = 2 cutoff "
               "(closed forms evaluated as printed)";
    return make_result("zero_pump_absorption_positivity", ok, det.str(),
                       {{"min_sigma_abs_total", min_abs},
                        {"tolerance", -1e-12},
                        {"worst_point",
                         {{"gamma_nr", w_g}, {"k0R", w_x}, {"detuning", w_d}}}});
}

SystemParams cutoff_point(double pump) {
    SystemParams p;
    p.gamma_nr = 0.2;
    p.pump_P = pump;
    p.k0R = 2.0;
    p.detuning = 0.0;
    return p;
}

CheckResult check_collective_suppression() {
    const SystemParams p0 = cutoff_point(0.0);
    const SystemParams p100 = cutoff_point(100.0);
    const double coll0 = sigma_ext(p0, coupling(p0)).sigma_ext_coll;
    const double coll100 = sigma_ext(p100, coupling(p100)).sigma_ext_coll;
    const bool ok = std::abs(coll100) < 0.05 * std::abs(coll0);
    std::ostringstream det;
    det << "|sigma_ext_coll(P=100)| = " << std::abs(coll100) << " vs 0.05*|P=0| = "
        << 0.05 * std::abs(coll0);
    return make_result("pump_suppresses_collective_extinction", ok, det.str(),
                       {{"coll_P0", coll0},
                        {"coll_P100", coll100},
                        {"threshold", 0.05}});
}

CheckResult check_extinction_reduction() {
    const SystemParams p0 = cutoff_point(0.0);
    const SystemParams p100 = cutoff_point(100.0);
    const double tot0 = sigma_ext(p0, coupling(p0)).sigma_ext_total;
    const double tot100 = sigma_ext(p100, coupling(p100)).sigma_ext_total;
    const double ratio = tot100 / tot0;
    const double formula_limit = strong_pump_extinction_limit(p0);
    const double nominal_limit = 0.75;
    const bool ok = ratio < 0.5;
    std::ostringstream det;
    det << "ratio sigma_ext_total(P=100)/sigma_ext_total(P=0) = " << ratio
        << " (required < 0.5; P=0: " << tot0 << ", P=100: " << tot100 << ")";
    det << "; strong-pump asymptote from the formulas: gamma0/gamma = "
        << formula_limit << " sigma0, nominal asymptote " << nominal_limit
        << " sigma0 — discrepancy flagged, informational only";
    if (!ok)
        det << "; at k0R = 2 the P=0 extinction is already interference-"
               "suppressed below the strong-pump level, so the halving is "
               "not reproduced by the closed forms as printed";
    return make_result("extinction_reduction_strong_pump", ok, det.str(),
                       {{"ratio", ratio},
                        {"required_below", 0.5},
                        {"sigma_ext_P0", tot0},
                        {"sigma_ext_P100", tot100},
                        {"formula_asymptote", formula_limit},
                        {"nominal_asymptote", nominal_limit},
                        {"asymptote_discrepancy_flagged", true}});
}

CheckResult check_decoupling_limit() {
    SystemParams p;
    p.gamma_nr = 0.2;
    p.k0R = 1e6;
    double worst = 0.0;
    std::string worst_what;
    for (double d : linspace(-10.0, 10.0, 10)) {
        for (double P : linspace(0.0, 20.0, 10)) {
            p.detuning = d;
            p.pump_P = P;
            const DipoleCoupling c = coupling(p);
            const ResponseBreakdown r = sigma_ext(p, c);
            const double g0_single = gamma0_total(p, DipoleCoupling{0.0, 0.0});
            const double g0_coll = r.gamma0_rate - g0_single;
            const std::pair<const char*, double> items[] = {
                {"sigma_sc_coll", r.sigma_sc_coll},
                {"sigma_abs_coll", r.sigma_abs_coll},
                {"sigma_ext_coll", r.sigma_ext_coll},
                {"ret_rate", r.ret_rate},
                {"gamma0_coll", g0_coll},
            };
            for (const auto& [what, v] : items) {
                if (std::abs(v) > worst) {
                    worst = std::abs(v);
                    worst_what = what;
                }
            }
        }
    }
    const bool ok = worst < 1e-9;
    std::ostringstream det;
    det << "max |collective quantity| at k0R=1e6 over 10x10 (detuning,pump) grid = "
        << worst << " (" << worst_what << ")";
    return make_result("decoupling_limit", ok, det.str(),
                       {{"max_collective", worst},
                        {"worst_quantity", worst_what},
                        {"tolerance", 1e-9}});
}

CheckResult check_coupling_tensor_oracle() {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> ux(0.5, 50.0);
    std::uniform_real_distribution<double> uth(0.0, M_PI);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = ux(rng);
        const double th = uth(rng);
        const std::complex<double> closed = green_projected(x, th).value();
        const std::complex<double> tensor = green_projected_tensor_oracle(x, th);
        const double rel = std::abs(closed - tensor) / std::abs(tensor);
        worst = std::max(worst, rel);
    }
    // contact limit of the collective decay coupling
    const DipoleCoupling near = coupling_from(1e-4, 0.0);
    const double limit_err = std::abs(near.gamma_coll - 0.5);
    const bool ok = worst <= 1e-12 && limit_err <= 1e-6;
    std::ostringstream det;
    det << "max rel diff closed-vs-tensor = " << worst
        << " over 100 random (x, theta); gamma_coll(x->0+) - 1/2 = "
        << near.gamma_coll - 0.5;
    return make_result("coupling_tensor_oracle", ok, det.str(),
                       {{"max_rel_err", worst},
                        {"tolerance", 1e-12},
                        {"contact_limit_err", limit_err},
                        {"contact_tolerance", 1e-6}});
}

CheckResult check_populations_oracle() {
    struct Case {
        double gnr, P, Ne0;
    };
    const Case cases[] = {{0.0, 0.0, 1.0},
                          {0.2, 1.2, 0.0},
                          {0.2, 7.5, 0.3},
                          {1.0, 0.5, 0.9},
                          {0.0, 20.0, 0.0}};
    double worst = 0.0;
    double worst_steady = 0.0;
    for (const Case& cs : cases) {
        SystemParams p;
        p.gamma_nr = cs.gnr;
        p.pump_P = cs.P;
        p.Ne0 = cs.Ne0;
        const double Gamma = p.pumped_width();
        const double t_end = 100.0 / Gamma;
        const double dt = 0.005 / Gamma;
        const auto traj = rate_equation_integrate(p, t_end, dt);
        const std::size_t stride = std::max<std::size_t>(1, traj.size() / 100);
        for (std::size_t i = 0; i < traj.size(); i += stride) {
            const Populations ref = populations_at(p, traj[i].t);
            worst = std::max(worst, std::abs(traj[i].pops.rho_ee - ref.rho_ee));
            worst = std::max(worst, std::abs(traj[i].pops.rho_gg - ref.rho_gg));
        }
        const SteadyWeights w = steady_weights(p);
        worst_steady =
            std::max(worst_steady,
                     std::abs(traj.back().pops.rho_ee - w.w_e));
        worst_steady =
            std::max(worst_steady,
                     std::abs(traj.back().pops.rho_gg - w.w_g));
    }
    const bool ok = worst <= 1e-9 && worst_steady <= 1e-9;
    std::ostringstream det;
    det << "max |integrator - closed form| = " << worst
        << ", max steady-state error = " << worst_steady
        << " over 5 parameter sets";
    return make_result("populations_oracle", ok, det.str(),
                       {{"max_err", worst},
                        {"max_steady_err", worst_steady},
                        {"tolerance", 1e-9}});
}

std::vector<CheckResult> check_power_quadrature(const CheckOptions& opts,
                                                double* elapsed_out) {
    const auto t0 = Clock::now();
    struct Job {
        PowerCase c;
        double P, d;
        std::string name;
    };
    std::vector<Job> jobs;
    for (PowerCase c :
         {PowerCase::W2, PowerCase::W4, PowerCase::W9, PowerCase::W12})
        for (double P : {1.2, 7.5})
            for (double d : {0.0, 1.0, -1.0}) {
                std::ostringstream name;
                name << "quadrature_" << to_string(c) << "_P" << P << "_d" << d;
                if (!opts.filter.empty() && opts.filter != "quadrature" &&
                    name.str().find(opts.filter) == std::string::npos &&
                    std::string("quadrature").find(opts.filter) ==
                        std::string::npos)
                    continue;
                jobs.push_back({c, P, d, name.str()});
            }

    QuadratureSettings qs;
    qs.level = opts.quad_level;
    std::vector<OracleReport> reports(jobs.size());
    const int n_threads = std::max(1, resolve_threads(opts.threads));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) break;
            SystemParams p;
            p.gamma_nr = 0.2;
            p.pump_P = jobs[k].P;
            p.detuning = jobs[k].d;
            p.k0R = 2.0;
            p.rabi0 = 0.01;
            reports[k] = run_power_check(jobs[k].c, p, opts.quad_tol, -1.0, qs);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<CheckResult> out;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const OracleReport& r = reports[k];
        std::ostringstream det;
        det << "closed " << r.closed_form << ", numeric " << r.numeric
            << ", rel err " << r.rel_err << " (tol " << r.tolerance << ")";
        CheckResult cr;
        cr.name = jobs[k].name;
        cr.passed = r.passed;
        cr.detail = det.str();
        json j = json::parse(oracle_report_json(r));
        j["check"] = cr.name;
        cr.json = j.dump();
        out.push_back(std::move(cr));
    }
    if (elapsed_out) *elapsed_out = seconds_since(t0);
    return out;
}

CheckResult check_figures(const CheckOptions& opts) {
    const auto t0 = Clock::now();
    json data;
    bool ok = true;
    std::ostringstream det;

    // detuning asymmetry of the collective scattering column at P=1.2
    {
        auto specs = fig3_specs();
        double t_fig3 = 0.0;
        double asym = 0.0;
        for (auto& [name, spec] : specs) {
            const auto tf = Clock::now();
            const SweepTable t = run_sweep(spec, opts.threads);
            t_fig3 = std::max(t_fig3, seconds_since(tf));
            if (spec.base.pump_P == 1.2) {
                // sigma_sc.coll is column 1; grid is symmetric around 0
                const std::size_t n = t.n_rows();
                std::size_t ip = 0, im = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (std::abs(t.at(i, 0) - 1.0) < 1e-9) ip = i;
                    if (std::abs(t.at(i, 0) + 1.0) < 1e-9) im = i;
                }
                asym = std::abs(t.at(ip, 1) - t.at(im, 1));
            }
        }
        ok = ok && asym > 1e-6 && t_fig3 < 10.0;
        det << "fig3: collective scattering asymmetry |s(+1)-s(-1)| = " << asym
            << ", slowest grid " << t_fig3 << " s";
        data["fig3_asymmetry"] = asym;
        data["fig3_max_elapsed_s"] = t_fig3;
    }

    // fig4 runtime only (content covered by the extinction checks)
    {
        const auto tf = Clock::now();
        for (auto& [name, spec] : fig4_specs()) run_sweep(spec, opts.threads);
        const double el = seconds_since(tf);
        ok = ok && el < 10.0;
        data["fig4_elapsed_s"] = el;
        det << "; fig4 " << el << " s";
    }

    // collective envelope decays with distance
    {
        const auto tf = Clock::now();
        bool envelope_ok = true;
        for (auto& [name, spec] : fig5_specs()) {
            const SweepTable t = run_sweep(spec, opts.threads);
            if (spec.base.pump_P == 0.0) continue; // collective columns ~ same envelope
            for (std::size_t col = 1; col <= 3; ++col) { // the three .coll columns
                double m1 = 0, m2 = 0, m3 = 0;
                for (std::size_t i = 0; i < t.n_rows(); ++i) {
                    const double x = t.at(i, 0);
                    const double v = std::abs(t.at(i, col));
                    if (x < 8.0) m1 = std::max(m1, v);
                    else if (x < 14.0) m2 = std::max(m2, v);
                    else m3 = std::max(m3, v);
                }
                envelope_ok = envelope_ok && m1 > m2 && m2 > m3;
            }
        }
        const double el = seconds_since(tf);
        ok = ok && envelope_ok && el < 10.0;
        det << "; fig5 collective envelope decreasing: "
            << (envelope_ok ? "yes" : "NO") << ", " << el << " s";
        data["fig5_envelope_decreasing"] = envelope_ok;
        data["fig5_elapsed_s"] = el;
    }

    data["total_elapsed_s"] = seconds_since(t0);
    return make_result("figure_grids", ok, det.str(), data);
}

CheckResult check_thread_determinism(const CheckOptions& opts) {
    auto specs = fig3_specs();
    const SweepSpec& spec = specs[1].second; // P = 1.2 grid
    const std::string csv1 = run_sweep(spec, 1).to_csv();
    const std::string csv3 = run_sweep(spec, 3).to_csv();
    const std::string csv7 = run_sweep(spec, 7).to_csv();
    const bool ok = csv1 == csv3 && csv1 == csv7;
    (void)opts;
    std::ostringstream det;
    det << "CSV bytes for threads {1,3,7}: "
        << (ok ? "identical" : "DIFFER");
    return make_result("csv_thread_determinism", ok, det.str(),
                       {{"identical", ok}, {"bytes", csv1.size()}});
}

} // namespace

std::complex<double> green_projected_tensor_oracle(double x, double theta) {
    // explicit projector tensors with mu_hat = z, R_hat in the x-z plane
    const double rx = std::sin(theta), rz = std::cos(theta);
    const double R[3] = {rx, 0.0, rz};
    double P[3][3], Q[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double id = i == j ? 1.0 : 0.0;
            P[i][j] = id - R[i] * R[j];
            Q[i][j] = id - 3.0 * R[i] * R[j];
        }
    const std::complex<double> phase{std::cos(x), std::sin(x)};
    const std::complex<double> ix2{0.0, 1.0 / (x * x)};
    std::complex<double> G[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            G[i][j] = -phase * (P[i][j] / x + Q[i][j] * ix2 -
                                Q[i][j] / (x * x * x));
    const double mu[3] = {0.0, 0.0, 1.0};
    std::complex<double> out{0.0, 0.0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out += mu[i] * G[i][j] * mu[j];
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

std::vector<CheckResult> run_checks(const CheckOptions& opts) {
    const auto matches = [&](const std::string& name) {
        return opts.filter.empty() ||
               name.find(opts.filter) != std::string::npos;
    };

    std::vector<CheckResult> all;
    auto maybe = [&](const char* name, auto&& fn) {
        if (matches(name)) all.push_back(fn());
    };

    maybe("semiclassical_identity", check_semiclassical_identity);
    maybe("zero_pump_absorption_positivity", check_absorption_positivity);
    maybe("pump_suppresses_collective_extinction", check_collective_suppression);
    maybe("extinction_reduction_strong_pump", check_extinction_reduction);
    maybe("decoupling_limit", check_decoupling_limit);
    maybe("coupling_tensor_oracle", check_coupling_tensor_oracle);
    maybe("populations_oracle", check_populations_oracle);
    {
        // job-level filtering happens inside; nothing runs when no job and
        // not the runtime summary match
        double quad_elapsed = 0.0;
        auto quad = check_power_quadrature(opts, &quad_elapsed);
        for (auto& r : quad) all.push_back(std::move(r));
        if (!quad.empty() && matches("quadrature_runtime"))
            all.push_back(make_result(
                "quadrature_runtime", quad_elapsed < 60.0,
                "power quadrature suite took " + std::to_string(quad_elapsed) +
                    " s (limit 60)",
                {{"elapsed_s", quad_elapsed}, {"limit_s", 60.0}}));
    }
    maybe("figure_grids", [&] { return check_figures(opts); });
    maybe("csv_thread_determinism",
          [&] { return check_thread_determinism(opts); });
    return all;
}

} // namespace dimer
