// dimer-response: steady-state optical response of a pumped two-atom system.
// Subcommands: sweep (grid evaluation to CSV), fig3/fig4/fig5 (built-in
// reference grids), validate (verification suite).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dimer/checks.hpp"
#include "dimer/response.hpp"
#include "dimer/sweep.hpp"
#include "dimer/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dimer::ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dimer::NumericError("cannot open output file: " + path);
    out << content;
}

void print_warnings(const dimer::SweepTable& table) {
    for (const auto& w : table.warnings)
        std::cerr << "warning: " << w << "\n";
}

int run_figures(const std::vector<std::pair<std::string, dimer::SweepSpec>>& specs,
                const std::string& out_dir, int threads, bool asymptote_note) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, spec] : specs) {
        dimer::SweepTable table = dimer::run_sweep(spec, threads);
        print_warnings(table);
        write_file((std::filesystem::path(out_dir) / name).string(),
                   table.to_csv());
        std::cerr << "wrote " << (std::filesystem::path(out_dir) / name).string()
                  << "\n";
    }
    if (asymptote_note) {
        const auto& base = specs.front().second.base;
        std::cerr << "note: strong-pump limit of sigma_ext_total from the "
                     "implemented formulas is gamma0/gamma = "
                  << dimer::strong_pump_extinction_limit(base)
                  << " sigma0; the nominal asymptote is 0.75 sigma0. The two "
                     "disagree; both are reported, neither is reconciled "
                     "silently.\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state optical response of a two-atom system with "
                 "incoherent gain"};
    app.set_version_flag("--version", dimer::kVersion);
    app.fallthrough(); // global options may follow the subcommand
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: DIMER_THREADS or hardware)");

    std::string config_path, out_path;
    auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();

    std::string out_dir = ".";
    auto* fig3 = app.add_subcommand("fig3", "detuning spectra at k0R=2");
    auto* fig4 = app.add_subcommand("fig4", "pump-rate scan at resonance");
    auto* fig5 = app.add_subcommand("fig5", "distance scan at resonance");
    for (auto* cmd : {fig3, fig4, fig5})
        cmd->add_option("--out-dir", out_dir, "output directory");

    std::string json_path, filter;
    double quad_tol = 0.02;
    double quad_level = 1.0;
    auto* validate = app.add_subcommand("validate", "run the verification suite");
    validate->add_option("--json", json_path, "write JSON-lines report here");
    validate->add_option("--filter", filter, "run only checks whose name contains this");
    validate->add_option("--quad-tol", quad_tol, "tolerance for the quadrature checks");
    validate->add_option("--quad-level", quad_level, "node-density multiplier");

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*sweep) {
            const dimer::SweepSpec spec = dimer::parse_config(read_file(config_path));
            dimer::SweepTable table = dimer::run_sweep(spec, threads);
            print_warnings(table);
            write_file(out_path, table.to_csv());
            return kExitOk;
        }
        if (*fig3) return run_figures(dimer::fig3_specs(), out_dir, threads, false);
        if (*fig4) return run_figures(dimer::fig4_specs(), out_dir, threads, true);
        if (*fig5) return run_figures(dimer::fig5_specs(), out_dir, threads, false);
        if (*validate) {
            dimer::CheckOptions opts;
            opts.quad_tol = quad_tol;
            opts.quad_level = quad_level;
            opts.filter = filter;
            opts.threads = threads;
            const auto results = dimer::run_checks(opts);
            if (results.empty()) {
                std::cerr << "validate: no checks match filter '" << filter << "'\n";
                return kExitConfigError;
            }
            std::ofstream json_out;
            if (!json_path.empty()) {
                json_out.open(json_path);
                if (!json_out)
                    throw dimer::ConfigError("cannot open report file: " + json_path);
            }
            bool all_ok = true;
            for (const auto& r : results) {
                std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name
                          << ": " << r.detail << "\n";
                if (json_out.is_open()) json_out << r.json << "\n";
                all_ok = all_ok && r.passed;
            }
            std::cout << (all_ok ? "all checks passed" : "some checks FAILED")
                      << " (" << results.size() << " run)\n";
            return all_ok ? kExitOk : kExitValidationFailure;
        }
    } catch (const dimer::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const dimer::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
    return kExitConfigError;
}
