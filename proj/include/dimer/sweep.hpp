#ifndef DIMER_SWEEP_HPP
#define DIMER_SWEEP_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/params.hpp"

namespace dimer {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepAxis { detuning, pump, distance };

enum class OutputColumn {
    sc_single, sc_coll, sc_total,
    abs_single, abs_coll, abs_total,
    ext_coll, ext_total,
    gamma0_rate, ret_rate, semiclassical,
};

const char* column_token(OutputColumn c);   // e.g. "sigma_sc.total"
const char* column_unit(OutputColumn c);    // "sigma0" or "gamma0"
const char* axis_token(SweepAxis a);

struct SweepSpec {
    SweepAxis axis = SweepAxis::detuning;
    double start = 0.0;
    double stop = 0.0;
    int n = 2;
    SystemParams base{};
    std::vector<OutputColumn> outputs{};

    void validate() const; // throws ConfigError

    bool operator==(const SweepSpec&) const = default;
};

// Config document <-> spec. The document is a single JSON object with keys
// gamma_nr, pump_P, detuning, rabi0, k0R, theta, pol_overlap, Ne0 (optional),
// sweep{axis,start,stop,n} and outputs[...]. Unknown keys are rejected.
SweepSpec parse_config(const std::string& json_text);
std::string to_config(const SweepSpec& spec);

struct SweepTable {
    SweepSpec spec{};
    std::vector<std::string> column_names{}; // axis column first, with units
    std::vector<double> values{};            // row-major, n rows
    std::vector<std::string> warnings{};
    std::string kernel_name{};

    std::size_t n_rows() const { return spec.n; }
    std::size_t n_cols() const { return column_names.size(); }
    double at(std::size_t row, std::size_t col) const {
        return values[row * n_cols() + col];
    }

    // CSV with '#'-prefixed metadata lines; floats as shortest round-trip
    // decimals. Byte-identical for a given spec regardless of thread count.
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
};

// Evaluates all requested outputs on the grid. Grid points are evaluated
// concurrently in fixed-size chunks and stored by index, so the result does
// not depend on the number of threads. threads <= 0 selects DIMER_THREADS or
// the hardware concurrency. Throws NumericError naming the first offending
// grid point if any output is non-finite.
SweepTable run_sweep(const SweepSpec& spec, int threads = 0);

// Built-in grids of the reference figures: cross-section spectra at
// k0R = 2, gamma_nr = gamma0/5 for pump rates {0, 1.2, 7.5} (detuning sweep),
// the pump-rate scan at resonance, and the distance scan.
std::vector<std::pair<std::string, SweepSpec>> fig3_specs();
std::vector<std::pair<std::string, SweepSpec>> fig4_specs();
std::vector<std::pair<std::string, SweepSpec>> fig5_specs();

int resolve_threads(int requested);

} // namespace dimer

#endif
