#include "doctest.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dimer/comparators.hpp"
#include "dimer/response.hpp"
#include "dimer/sweep.hpp"

using namespace dimer;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.axis = SweepAxis::detuning;
    spec.start = -5.0;
    spec.stop = 5.0;
    spec.n = 101;
    spec.base.gamma_nr = 0.2;
    spec.base.pump_P = 1.2;
    spec.base.k0R = 2.0;
    spec.outputs = {OutputColumn::sc_total, OutputColumn::ext_coll,
                    OutputColumn::ret_rate, OutputColumn::semiclassical};
    return spec;
}

} // namespace

TEST_CASE("sweep values match direct evaluation") {
    const SweepSpec spec = small_spec();
    const SweepTable t = run_sweep(spec, 2);
    REQUIRE(t.n_rows() == 101);
    REQUIRE(t.n_cols() == 5);
    for (std::size_t i = 0; i < t.n_rows(); i += 13) {
        SystemParams p = spec.base;
        p.detuning = t.at(i, 0);
        const DipoleCoupling c = coupling(p);
        const ResponseBreakdown r = sigma_ext(p, c);
        CHECK(t.at(i, 1) == doctest::Approx(r.sigma_sc_total).epsilon(1e-13));
        CHECK(t.at(i, 2) == doctest::Approx(r.sigma_ext_coll).epsilon(1e-13));
        CHECK(t.at(i, 3) == doctest::Approx(r.ret_rate).epsilon(1e-13));
        CHECK(t.at(i, 4) ==
              doctest::Approx(semiclassical_sigma_sc(p, c)).epsilon(1e-13));
    }
    // endpoints land exactly on the requested range
    CHECK(t.at(0, 0) == -5.0);
    CHECK(t.at(100, 0) == 5.0);
}

TEST_CASE("pump and distance sweeps vary the right parameter") {
    SweepSpec spec = small_spec();
    spec.axis = SweepAxis::pump;
    spec.start = 0.0;
    spec.stop = 20.0;
    spec.n = 21;
    const SweepTable t = run_sweep(spec, 1);
    SystemParams p = spec.base;
    p.pump_P = t.at(7, 0);
    CHECK(t.at(7, 1) ==
          doctest::Approx(sigma_ext(p, coupling(p)).sigma_sc_total).epsilon(1e-13));

    spec.axis = SweepAxis::distance;
    spec.start = 2.0;
    spec.stop = 20.0;
    const SweepTable td = run_sweep(spec, 1);
    SystemParams pd = spec.base;
    pd.k0R = td.at(11, 0);
    CHECK(td.at(11, 1) ==
          doctest::Approx(sigma_ext(pd, coupling(pd)).sigma_sc_total).epsilon(1e-13));
}

TEST_CASE("csv output is byte-identical across thread counts") {
    const SweepSpec spec = small_spec();
    const std::string one = run_sweep(spec, 1).to_csv();
    const std::string three = run_sweep(spec, 3).to_csv();
    const std::string seven = run_sweep(spec, 7).to_csv();
    CHECK(one == three);
    CHECK(one == seven);
}

TEST_CASE("csv floats round-trip exactly") {
    const SweepTable t = run_sweep(small_spec(), 2);
    std::istringstream in(t.to_csv());
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find("detuning") != std::string::npos) continue; // header
        std::size_t col = 0;
        std::size_t pos = 0;
        while (pos <= line.size() && col < t.n_cols()) {
            std::size_t next = line.find(',', pos);
            if (next == std::string::npos) next = line.size();
            double parsed = 0.0;
            const auto res =
                std::from_chars(line.data() + pos, line.data() + next, parsed);
            REQUIRE(res.ec == std::errc());
            CHECK(parsed == t.at(row, col));
            ++col;
            pos = next + 1;
        }
        CHECK(col == t.n_cols());
        ++row;
    }
    CHECK(row == t.n_rows());
}

TEST_CASE("config round trip is value-identical") {
    SweepSpec spec = small_spec();
    spec.base.Ne0 = 0.25;
    spec.base.rabi0 = 0.01;
    const SweepSpec again = parse_config(to_config(spec));
    CHECK(again == spec);
    // and once more through the serialized form
    CHECK(to_config(again) == to_config(spec));
}

TEST_CASE("config parsing rejects malformed documents") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"bogus_key": 1, "sweep": {"axis": "detuning", "start": 0, "stop": 1, "n": 5}, "outputs": ["sigma_sc.total"]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"axis": "sideways", "start": 0, "stop": 1, "n": 5}, "outputs": ["sigma_sc.total"]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"axis": "detuning", "start": 1, "stop": 0, "n": 5}, "outputs": ["sigma_sc.total"]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"axis": "detuning", "start": 0, "stop": 1, "n": 1}, "outputs": ["sigma_sc.total"]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"axis": "detuning", "start": 0, "stop": 1, "n": 5}, "outputs": []})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"sweep": {"axis": "detuning", "start": 0, "stop": 1, "n": 5}, "outputs": ["sigma_bogus"]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"gamma_nr": -1, "sweep": {"axis": "detuning", "start": 0, "stop": 1, "n": 5}, "outputs": ["sigma_sc.total"]})"),
                    ConfigError);
}

TEST_CASE("bare output names expand to all selectors") {
    const SweepSpec spec = parse_config(
        R"({"sweep": {"axis": "detuning", "start": -1, "stop": 1, "n": 5},
            "outputs": ["sigma_sc", "sigma_ext", "ret_rate"]})");
    REQUIRE(spec.outputs.size() == 6);
    CHECK(spec.outputs[0] == OutputColumn::sc_single);
    CHECK(spec.outputs[3] == OutputColumn::ext_coll);
    CHECK(spec.outputs[5] == OutputColumn::ret_rate);
}

TEST_CASE("non-finite grid points are reported with their location") {
    SweepSpec spec = small_spec();
    spec.axis = SweepAxis::distance;
    spec.start = 1e-310; // overflows the near-field terms
    spec.stop = 1.0;
    spec.n = 3;
    CHECK_THROWS_AS(run_sweep(spec, 1), NumericError);
    try {
        run_sweep(spec, 1);
    } catch (const NumericError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("distance") != std::string::npos);
        CHECK(msg.find("grid index") != std::string::npos);
    }
}

TEST_CASE("figure presets carry the reference parameters") {
    const auto f3 = fig3_specs();
    REQUIRE(f3.size() == 3);
    CHECK(f3[0].second.base.pump_P == 0.0);
    CHECK(f3[1].second.base.pump_P == 1.2);
    CHECK(f3[2].second.base.pump_P == 7.5);
    for (const auto& [name, s] : f3) {
        CHECK(s.base.k0R == 2.0);
        CHECK(s.base.gamma_nr == doctest::Approx(0.2));
        CHECK(s.axis == SweepAxis::detuning);
        CHECK(s.n >= 201);
    }
    const auto f4 = fig4_specs();
    REQUIRE(f4.size() == 1);
    CHECK(f4[0].second.axis == SweepAxis::pump);
    const auto f5 = fig5_specs();
    REQUIRE(f5.size() == 3);
    CHECK(f5[0].second.axis == SweepAxis::distance);
    CHECK(f5[0].second.start == 2.0);
    CHECK(f5[0].second.stop == 20.0);
}

TEST_CASE("thread resolution honors request and environment") {
    CHECK(resolve_threads(5) == 5);
    setenv("DIMER_THREADS", "3", 1);
    CHECK(resolve_threads(0) == 3);
    CHECK(resolve_threads(2) == 2); // explicit request wins
    unsetenv("DIMER_THREADS");
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("semiclassical column with pump carries a comparator warning") {
    SweepSpec spec = small_spec(); // pump_P = 1.2, semiclassical requested
    const SweepTable t = run_sweep(spec, 1);
    bool found = false;
    for (const auto& w : t.warnings)
        found = found || w.find("ground-state comparator") != std::string::npos;
    CHECK(found);
}

TEST_CASE("distance sweeps below the cutoff carry a warning") {
    SweepSpec spec = small_spec();
    spec.axis = SweepAxis::distance;
    spec.start = 1.0;
    spec.stop = 3.0;
    spec.n = 5;
    const SweepTable t = run_sweep(spec, 1);
    REQUIRE(!t.warnings.empty());
    CHECK(t.warnings[0].find("cutoff") != std::string::npos);
}
