#include "dimer/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dimer/comparators.hpp"
#include "dimer/kernels.hpp"
#include "dimer/response.hpp"
#include "dimer/version.hpp"

namespace dimer {

namespace {

constexpr std::size_t kChunk = 64; // fixed work unit, independent of threads

const std::pair<OutputColumn, const char*> kColumnTokens[] = {
    {OutputColumn::sc_single, "sigma_sc.single"},
    {OutputColumn::sc_coll, "sigma_sc.coll"},
    {OutputColumn::sc_total, "sigma_sc.total"},
    {OutputColumn::abs_single, "sigma_abs.single"},
    {OutputColumn::abs_coll, "sigma_abs.coll"},
    {OutputColumn::abs_total, "sigma_abs.total"},
    {OutputColumn::ext_coll, "sigma_ext.coll"},
    {OutputColumn::ext_total, "sigma_ext.total"},
    {OutputColumn::gamma0_rate, "gamma0_rate"},
    {OutputColumn::ret_rate, "ret_rate"},
    {OutputColumn::semiclassical, "semiclassical"},
};

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

const char* column_token(OutputColumn c) {
    for (const auto& [col, tok] : kColumnTokens)
        if (col == c) return tok;
    return "?";
}

const char* column_unit(OutputColumn c) {
    switch (c) {
        case OutputColumn::gamma0_rate:
        case OutputColumn::ret_rate: return "gamma0";
        default: return "sigma0";
    }
}

const char* axis_token(SweepAxis a) {
    switch (a) {
        case SweepAxis::detuning: return "detuning";
        case SweepAxis::pump: return "pump";
        case SweepAxis::distance: return "distance";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (n < 2) throw ConfigError("sweep: n_points must be >= 2");
    if (!(start < stop)) throw ConfigError("sweep: require start < stop");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw ConfigError("sweep: range must be finite");
    if (outputs.empty()) throw ConfigError("sweep: outputs must not be empty");
    if (axis == SweepAxis::pump && start < 0.0)
        throw ConfigError("sweep: pump rates must be >= 0");
    if (axis == SweepAxis::distance && start <= 0.0)
        throw ConfigError("sweep: distances must be > 0");
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

SweepSpec parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    static const char* known[] = {"gamma_nr", "pump_P", "detuning", "rabi0",
                                  "k0R",      "theta",  "pol_overlap", "Ne0",
                                  "sweep",    "outputs"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "'");
    }

    auto num = [&](const char* key, double fallback) -> double {
        if (!j.contains(key)) return fallback;
        if (!j[key].is_number())
            throw ConfigError(std::string("config: key '") + key + "' must be a number");
        return j[key].get<double>();
    };

    SweepSpec spec;
    spec.base.gamma_nr = num("gamma_nr", 0.0);
    spec.base.pump_P = num("pump_P", 0.0);
    spec.base.detuning = num("detuning", 0.0);
    spec.base.rabi0 = num("rabi0", 0.0);
    spec.base.k0R = num("k0R", 2.0);
    spec.base.theta = num("theta", 0.0);
    spec.base.pol_overlap = num("pol_overlap", 1.0);
    if (j.contains("Ne0")) spec.base.Ne0 = num("Ne0", 0.0);

    if (!j.contains("sweep") || !j["sweep"].is_object())
        throw ConfigError("config: missing 'sweep' object");
    const auto& s = j["sweep"];
    for (auto it = s.begin(); it != s.end(); ++it) {
        if (it.key() != "axis" && it.key() != "start" && it.key() != "stop" &&
            it.key() != "n")
            throw ConfigError("config: unknown sweep key '" + it.key() + "'");
    }
    if (!s.contains("axis") || !s["axis"].is_string())
        throw ConfigError("config: sweep.axis must be a string");
    const std::string axis = s["axis"].get<std::string>();
    if (axis == "detuning") spec.axis = SweepAxis::detuning;
    else if (axis == "pump") spec.axis = SweepAxis::pump;
    else if (axis == "distance") spec.axis = SweepAxis::distance;
    else throw ConfigError("config: sweep.axis must be detuning|pump|distance");
    if (!s.contains("start") || !s.contains("stop") || !s.contains("n"))
        throw ConfigError("config: sweep needs start, stop and n");
    if (!s["start"].is_number() || !s["stop"].is_number())
        throw ConfigError("config: sweep.start/stop must be numbers");
    spec.start = s["start"].get<double>();
    spec.stop = s["stop"].get<double>();
    if (!s["n"].is_number_integer())
        throw ConfigError("config: sweep.n must be an integer");
    spec.n = s["n"].get<int>();

    if (!j.contains("outputs") || !j["outputs"].is_array())
        throw ConfigError("config: 'outputs' must be an array");
    for (const auto& item : j["outputs"]) {
        if (!item.is_string())
            throw ConfigError("config: outputs entries must be strings");
        const std::string tok = item.get<std::string>();
        bool found = false;
        for (const auto& [col, name] : kColumnTokens) {
            if (tok == name) {
                spec.outputs.push_back(col);
                found = true;
                break;
            }
        }
        if (!found) {
            // bare cross-section names expand to all selectors
            if (tok == "sigma_sc" || tok == "sigma_abs") {
                const bool sc = tok == "sigma_sc";
                spec.outputs.push_back(sc ? OutputColumn::sc_single
                                          : OutputColumn::abs_single);
                spec.outputs.push_back(sc ? OutputColumn::sc_coll
                                          : OutputColumn::abs_coll);
                spec.outputs.push_back(sc ? OutputColumn::sc_total
                                          : OutputColumn::abs_total);
            } else if (tok == "sigma_ext") {
                spec.outputs.push_back(OutputColumn::ext_coll);
                spec.outputs.push_back(OutputColumn::ext_total);
            } else {
                throw ConfigError("config: unknown output '" + tok + "'");
            }
        }
    }

    spec.validate();
    return spec;
}

std::string to_config(const SweepSpec& spec) {
    nlohmann::json j;
    j["gamma_nr"] = spec.base.gamma_nr;
    j["pump_P"] = spec.base.pump_P;
    j["detuning"] = spec.base.detuning;
    j["rabi0"] = spec.base.rabi0;
    j["k0R"] = spec.base.k0R;
    j["theta"] = spec.base.theta;
    j["pol_overlap"] = spec.base.pol_overlap;
    if (spec.base.Ne0) j["Ne0"] = *spec.base.Ne0;
    j["sweep"] = {{"axis", axis_token(spec.axis)},
                  {"start", spec.start},
                  {"stop", spec.stop},
                  {"n", spec.n}};
    auto outputs = nlohmann::json::array();
    for (OutputColumn c : spec.outputs) outputs.push_back(column_token(c));
    j["outputs"] = outputs;
    return j.dump(2);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DIMER_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepTable run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    const int n_threads = resolve_threads(threads);
    const std::size_t n = static_cast<std::size_t>(spec.n);
    const std::size_t n_out = spec.outputs.size();

    std::vector<double> axis(n);
    const double step = (spec.stop - spec.start) / (spec.n - 1);
    for (std::size_t i = 0; i < n; ++i)
        axis[i] = spec.start + step * static_cast<double>(i);
    axis[n - 1] = spec.stop;

    SweepTable table;
    table.spec = spec;
    table.kernel_name = kernels::active_kernel_name();
    table.column_names.reserve(1 + n_out);
    const char* axis_unit =
        spec.axis == SweepAxis::distance ? "k0R" : "gamma0";
    table.column_names.push_back(std::string(axis_token(spec.axis)) + "[" +
                                 axis_unit + "]");
    for (OutputColumn c : spec.outputs)
        table.column_names.push_back(std::string(column_token(c)) + "[" +
                                     column_unit(c) + "]");
    table.values.assign(n * (1 + n_out), 0.0);

    // full-response scratch columns, filled by index
    std::vector<std::vector<double>> full(11, std::vector<double>(n));

    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        if (spec.axis == SweepAxis::detuning) {
            kernels::ResponseContext ctx = kernels::ResponseContext::from(
                spec.base, coupling(spec.base));
            kernels::ResponseBatch batch{
                std::span(full[0]), std::span(full[1]), std::span(full[2]),
                std::span(full[3]), std::span(full[4]), std::span(full[5]),
                std::span(full[6]), std::span(full[7]), std::span(full[8]),
                std::span(full[9]), std::span(full[10])};
            kernels::active_kernel()(
                ctx, std::span(axis).subspan(lo, hi - lo), batch, lo);
        } else {
            SystemParams p = spec.base;
            for (std::size_t i = lo; i < hi; ++i) {
                if (spec.axis == SweepAxis::pump) p.pump_P = axis[i];
                else p.k0R = axis[i];
                const DipoleCoupling c = coupling(p);
                const ResponseBreakdown r = sigma_ext(p, c);
                const double semicl = semiclassical_sigma_sc(p, c);
                full[0][i] = r.sigma_sc_single;
                full[1][i] = r.sigma_sc_coll;
                full[2][i] = r.sigma_sc_total;
                full[3][i] = r.sigma_abs_single;
                full[4][i] = r.sigma_abs_coll;
                full[5][i] = r.sigma_abs_total;
                full[6][i] = r.sigma_ext_coll;
                full[7][i] = r.sigma_ext_total;
                full[8][i] = r.gamma0_rate;
                full[9][i] = r.ret_rate;
                full[10][i] = semicl;
            }
        }
    };

    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n_chunks) break;
            const std::size_t lo = k * kChunk;
            const std::size_t hi = std::min(n, lo + kChunk);
            eval_range(lo, hi);
        }
    };
    if (n_threads <= 1 || n_chunks <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int use = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(n_threads), n_chunks));
        pool.reserve(use);
        for (int i = 0; i < use; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // the scratch columns are laid out in OutputColumn declaration order
    for (std::size_t i = 0; i < n; ++i) {
        table.values[i * (1 + n_out)] = axis[i];
        for (std::size_t c = 0; c < n_out; ++c) {
            const auto src = static_cast<std::size_t>(spec.outputs[c]);
            const double v = full[src][i];
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "run_sweep: non-finite " << column_token(spec.outputs[c])
                    << " at " << axis_token(spec.axis) << " = " << axis[i]
                    << " (grid index " << i << "); base config: " << to_config(spec);
                throw NumericError(msg.str());
            }
            table.values[i * (1 + n_out) + 1 + c] = v;
        }
    }

    // validity advisories over the whole grid
    ValidityFlags flags = spec.base.validity();
    if (spec.axis == SweepAxis::distance && spec.start < 2.0)
        flags |= kBelowPerturbativeCutoff;
    if (spec.axis == SweepAxis::pump) {
        SystemParams hi_p = spec.base;
        hi_p.pump_P = spec.start; // weakest pump has the smallest Gamma
        flags |= hi_p.validity();
    }
    table.warnings = describe_validity(flags);
    const bool wants_semicl =
        std::find(spec.outputs.begin(), spec.outputs.end(),
                  OutputColumn::semiclassical) != spec.outputs.end();
    const bool pumped = spec.base.pump_P > 0.0 ||
                        (spec.axis == SweepAxis::pump && spec.stop > 0.0);
    if (wants_semicl && pumped)
        table.warnings.push_back(
            "semiclassical column is a ground-state comparator and ignores the pump");
    return table;
}

void SweepTable::write_csv(std::ostream& os) const {
    os << "# dimer-response " << kVersion << "\n";
    os << "# kernel: " << kernel_name << "\n";
    os << "# config: " << nlohmann::json::parse(to_config(spec)).dump() << "\n";
    for (const auto& w : warnings) os << "# warning: " << w << "\n";
    for (std::size_t c = 0; c < column_names.size(); ++c) {
        if (c) os << ",";
        os << column_names[c];
    }
    os << "\n";
    for (std::size_t i = 0; i < n_rows(); ++i) {
        for (std::size_t c = 0; c < n_cols(); ++c) {
            if (c) os << ",";
            os << format_double(at(i, c));
        }
        os << "\n";
    }
}

std::string SweepTable::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

namespace {

SweepSpec figure_base(SweepAxis axis, double start, double stop, double pump) {
    SweepSpec spec;
    spec.axis = axis;
    spec.start = start;
    spec.stop = stop;
    spec.n = 201;
    spec.base.gamma_nr = 0.2;
    spec.base.pump_P = pump;
    spec.base.k0R = 2.0;
    spec.outputs = {OutputColumn::sc_coll,  OutputColumn::abs_coll,
                    OutputColumn::ext_coll, OutputColumn::sc_total,
                    OutputColumn::abs_total, OutputColumn::ext_total};
    return spec;
}

} // namespace

std::vector<std::pair<std::string, SweepSpec>> fig3_specs() {
    std::vector<std::pair<std::string, SweepSpec>> out;
    for (double P : {0.0, 1.2, 7.5}) {
        std::ostringstream name;
        name << "fig3_P" << P << ".csv";
        out.emplace_back(name.str(),
                         figure_base(SweepAxis::detuning, -5.0, 5.0, P));
    }
    return out;
}

std::vector<std::pair<std::string, SweepSpec>> fig4_specs() {
    std::vector<std::pair<std::string, SweepSpec>> out;
    out.emplace_back("fig4.csv", figure_base(SweepAxis::pump, 0.0, 20.0, 0.0));
    return out;
}

std::vector<std::pair<std::string, SweepSpec>> fig5_specs() {
    std::vector<std::pair<std::string, SweepSpec>> out;
    for (double P : {0.0, 1.2, 7.5}) {
        std::ostringstream name;
        name << "fig5_P" << P << ".csv";
        out.emplace_back(name.str(),
                         figure_base(SweepAxis::distance, 2.0, 20.0, P));
    }
    return out;
}

} // namespace dimer
