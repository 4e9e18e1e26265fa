#include "dimer/powercheck.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dimer {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// Composite Gauss-Legendre integral of a complex integrand. panel_width is a
// target; the actual width divides the interval evenly.
template <typename F>
cplx integrate(F&& f, double lo, double hi, double panel_width) {
    const double span = hi - lo;
    const int n_panels = std::max(8, static_cast<int>(std::ceil(span / panel_width)));
    const double h = span / n_panels;
    cplx acc{0.0, 0.0};
    for (int k = 0; k < n_panels; ++k) {
        const double a = lo + k * h;
        const double mid = a + 0.5 * h;
        cplx panel{0.0, 0.0};
        for (int j = 0; j < kGL; ++j)
            panel += kGLw[j] * f(mid + 0.5 * h * kGLx[j]);
        acc += 0.5 * h * panel;
    }
    return acc;
}

// Gaussian window around the active frequency region. Regulates the
// oscillatory large-frequency growth of the integrands (adiabatic switching
// of the frequency sum); its Fourier tail decays like exp(-(a*sigma)^2/2),
// so completion identities at the coupling's oscillation scale survive to
// machine-level accuracy once sigma spans a couple of oscillation periods.
double window(double w, double center, double sigma) {
    const double s = (w - center) / sigma;
    return std::exp(-0.5 * s * s);
}

// Time-window averages over t in [T, T+tau] (one probe period), applied
// analytically per node.
//   sinc_avg: average of sin(u t)/u
//   phase_avg: average of e^{i u t}
double sinc_avg(double u, double T, double tau) {
    if (std::abs(u) * (T + tau) < 1e-8)
        return T + 0.5 * tau;
    return (std::cos(u * T) - std::cos(u * (T + tau))) / (u * u * tau);
}

cplx phase_avg(double u, double T, double tau) {
    if (std::abs(u) * (T + tau) < 1e-8)
        return {1.0, 0.0};
    const cplx eT = std::polar(1.0, u * T);
    const cplx etau = std::polar(1.0, u * tau);
    return eT * (etau - 1.0) / (kI * u * tau);
}

struct CaseGeometry {
    double gamma, Gamma, omega0, omega, a, period, t, tau;
};

CaseGeometry geometry(const SystemParams& p, double t_obs) {
    CaseGeometry g;
    g.gamma = p.gamma_total();
    g.Gamma = p.pumped_width();
    g.omega0 = p.omega0;
    g.omega = p.probe_frequency();
    g.a = p.k0R / p.omega0; // retardation scale R/c
    g.period = 2.0 * M_PI / g.a;
    g.t = t_obs;
    g.tau = 2.0 * M_PI / g.omega;
    return g;
}

// Shared sinc-type integral of the exchanged-photon channels:
//   J = (1/pi) Int dw' w' ImOmega(w') * (-2) sinc_avg(omega - w')
//       / (w' - omega0 + i Gamma/2)
cplx sinc_channel_integral(const SystemParams& p, const CaseGeometry& g,
                           double level) {
    const double sigma = std::max(40.0 * g.Gamma, 1.0 * g.period);
    const double half = 5.0 * sigma;
    const double rate = g.t + g.tau + g.a + 16.0 / g.Gamma;
    const double h = 8.0 / (rate * level);
    auto f = [&](double w) -> cplx {
        const double im = coupling_at_frequency(w, p).imag();
        const double s = sinc_avg(g.omega - w, g.t, g.tau);
        return window(w, g.omega, sigma) * w * im * (-2.0) * s /
               (cplx(w - g.omega0, 0.5 * g.Gamma));
    };
    return integrate(f, g.omega - half, g.omega + half, h) / M_PI;
}

double eval_W2(const SystemParams& p, const CaseGeometry& g, double level) {
    const cplx J = sinc_channel_integral(p, g, level);
    const double d = p.detuning;
    const cplx pref = 1.0 / cplx(d, 0.5 * g.gamma);
    const double we = p.pump_P / g.Gamma;
    const double O0sq = p.rabi0 * p.rabi0;
    return we * (-O0sq / 4.0) * 2.0 * std::real(pref * J);
}

double eval_W12(const SystemParams& p, const CaseGeometry& g, double level) {
    const cplx J = sinc_channel_integral(p, g, level);
    const double d = p.detuning;
    const cplx pref = 1.0 / (cplx(d, -0.5 * g.Gamma) * (g.gamma + g.Gamma));
    const double O0sq = p.rabi0 * p.rabi0;
    return p.pump_P * (-O0sq / 4.0) * 2.0 * std::real(pref * J);
}

double eval_W4(const SystemParams& p, const CaseGeometry& g, double level) {
    // resonant factor of the exchanged virtual photon
    const double sigmaL = std::max(40.0 * g.Gamma, 1.5 * g.period);
    const double halfL = 5.0 * sigmaL;
    const double rateL = g.a + 16.0 / g.Gamma;
    auto fL = [&](double w) -> cplx {
        const double im = coupling_at_frequency(w, p).imag();
        return window(w, g.omega0, sigmaL) * im /
               cplx(w - g.omega0, 0.5 * g.Gamma);
    };
    const cplx IL =
        integrate(fL, g.omega0 - halfL, g.omega0 + halfL, 8.0 / (rateL * level)) /
        M_PI;

    // self-field factor, emitted photon created and annihilated at the
    // partner atom (finite r -> 0 limit of the imaginary part)
    const double sigmaS = 40.0 * g.Gamma;
    const double halfS = 5.0 * sigmaS;
    const double rateS = g.t + g.tau + 16.0 / g.Gamma;
    auto fS = [&](double w) -> cplx {
        const double im = self_im_coupling_at_frequency(w, p);
        return window(w, g.omega, sigmaS) * w * im * (-2.0) *
               sinc_avg(g.omega - w, g.t, g.tau);
    };
    const cplx IS =
        integrate(fS, g.omega - halfS, g.omega + halfS, 8.0 / (rateS * level)) /
        M_PI;

    const double d = p.detuning;
    const double Lg = d * d + 0.25 * g.gamma * g.gamma;
    const cplx denom = kI * 0.5 * (g.Gamma + g.gamma) * Lg;
    const double we = p.pump_P / g.Gamma;
    const double O0sq = p.rabi0 * p.rabi0;
    return we * (-O0sq / 4.0) * 2.0 * std::real(IL * IS / denom);
}

double eval_W9(const SystemParams& p, const CaseGeometry& g, double level) {
    const double sigma =
        std::max({40.0 * g.Gamma, 40.0 * g.gamma, 1.5 * g.period});
    const double half = 5.0 * sigma;
    const double rate = g.t + g.tau + g.a + 16.0 / g.Gamma + 16.0 / g.gamma;
    const double h = 8.0 / (rate * level);
    auto f = [&](double w) -> cplx {
        const double im = coupling_at_frequency(w, p).imag();
        const double u = w - g.omega;
        const cplx ph = phase_avg(u, g.t, g.tau);
        cplx kernel;
        if (std::abs(u) * (g.t + g.tau) < 1e-8) {
            kernel = cplx(0.0, -(g.t + 0.5 * g.tau)); // limit of (1 - e^{iut})/u
        } else {
            kernel = (1.0 - ph) / u;
        }
        kernel += ph / cplx(w - g.omega0, -0.5 * g.gamma);
        return window(w, g.omega, sigma) * w * im * kernel;
    };
    const cplx J = integrate(f, g.omega - half, g.omega + half, h) / M_PI;
    const double d = p.detuning;
    const double Lg = d * d + 0.25 * g.gamma * g.gamma;
    const cplx denom = cplx(d, -0.5 * g.Gamma) * Lg;
    const double wg = g.gamma / g.Gamma;
    const double O0sq = p.rabi0 * p.rabi0;
    return g.gamma * wg * (O0sq / 4.0) * 2.0 * std::real(J / denom);
}

double eval_case(PowerCase c, const SystemParams& p, const CaseGeometry& g,
                 double level) {
    switch (c) {
        case PowerCase::W2: return eval_W2(p, g, level);
        case PowerCase::W4: return eval_W4(p, g, level);
        case PowerCase::W9: return eval_W9(p, g, level);
        case PowerCase::W12: return eval_W12(p, g, level);
    }
    throw std::invalid_argument("unknown power case");
}

} // namespace

const char* to_string(PowerCase c) {
    switch (c) {
        case PowerCase::W2: return "W2";
        case PowerCase::W4: return "W4";
        case PowerCase::W9: return "W9";
        case PowerCase::W12: return "W12";
    }
    return "?";
}

double closed_form_power(PowerCase c, const SystemParams& p,
                         const DipoleCoupling& cp) {
    const double gamma = p.gamma_total();
    const double Gamma = p.pumped_width();
    const double d = p.detuning;
    const double Lg = d * d + 0.25 * gamma * gamma;
    const double LG = d * d + 0.25 * Gamma * Gamma;
    const double omega = p.probe_frequency();
    const double O0sq = p.rabi0 * p.rabi0;
    const double we = p.pump_P / Gamma;
    // projections at the probe frequency; at the transition frequency the
    // frequency-resolved coupling reduces to the static one passed in
    const cplx om_probe = coupling_at_frequency(omega, p);
    const double im_res = -cp.gamma_coll;

    switch (c) {
        case PowerCase::W2:
            return omega * O0sq * we * (d * d - 0.25 * gamma * Gamma) *
                   om_probe.imag() / (LG * Lg);
        case PowerCase::W4:
            return -we * omega * O0sq *
                   self_im_coupling_at_frequency(omega, p) * im_res /
                   (0.5 * (Gamma + gamma) * Lg);
        case PowerCase::W9:
            return gamma * (gamma / Gamma) * 0.25 * omega * O0sq *
                   (2.0 * d * om_probe.real() + Gamma * om_probe.imag()) /
                   (LG * Lg);
        case PowerCase::W12:
            return omega * O0sq * p.pump_P * im_res / (LG * (Gamma + gamma));
    }
    throw std::invalid_argument("unknown power case");
}

double numeric_power(PowerCase c, const SystemParams& p, double t_obs,
                     const QuadratureSettings& settings) {
    p.validate();
    const double gamma = p.gamma_total();
    if (!(t_obs * gamma >= 10.0))
        throw std::invalid_argument(
            "numeric_power: t_obs too small, require t_obs * gamma >= 10");
    const CaseGeometry g = geometry(p, t_obs);
    const double coarse = eval_case(c, p, g, settings.level);
    if (!settings.self_check) return coarse;
    const double fine = eval_case(c, p, g, 2.0 * settings.level);
    const double denom = std::max({std::abs(fine), std::abs(coarse), 1e-300});
    const double drift = std::abs(fine - coarse) / denom;
    if (drift > settings.rel_self_check) {
        std::ostringstream msg;
        msg << "numeric_power(" << to_string(c)
            << "): quadrature did not converge, node doubling moved the "
               "estimate by "
            << drift << " (limit " << settings.rel_self_check << ")";
        throw QuadratureError(msg.str(), drift);
    }
    return fine;
}

OracleReport run_power_check(PowerCase c, const SystemParams& p,
                             double tolerance, double t_obs,
                             const QuadratureSettings& settings) {
    OracleReport r;
    r.case_id = c;
    r.params = p;
    r.tolerance = tolerance;
    r.closed_form = closed_form_power(c, p, coupling(p));
    const double t = t_obs > 0.0 ? t_obs : 50.0 / p.gamma_total();
    try {
        r.numeric = numeric_power(c, p, t, settings);
        const double scale = std::max(std::abs(r.closed_form), 1e-300);
        r.rel_err = std::abs(r.numeric - r.closed_form) / scale;
        r.passed = r.rel_err <= tolerance;
    } catch (const QuadratureError&) {
        r.numeric = std::numeric_limits<double>::quiet_NaN();
        r.rel_err = std::numeric_limits<double>::infinity();
        r.passed = false;
    }
    return r;
}

std::string oracle_report_json(const OracleReport& r) {
    nlohmann::json j;
    j["check"] = std::string("quadrature_") + to_string(r.case_id);
    j["case"] = to_string(r.case_id);
    j["params"] = {
        {"gamma0", r.params.gamma0},     {"gamma_nr", r.params.gamma_nr},
        {"pump_P", r.params.pump_P},     {"detuning", r.params.detuning},
        {"rabi0", r.params.rabi0},       {"k0R", r.params.k0R},
        {"theta", r.params.theta},       {"pol_overlap", r.params.pol_overlap},
        {"omega0", r.params.omega0},
    };
    j["closed_form"] = r.closed_form;
    j["numeric"] = r.numeric;
    j["rel_err"] = r.rel_err;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    return j.dump();
}

} // namespace dimer
