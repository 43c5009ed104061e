#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "csvio.hpp"
#include "fom.hpp"

namespace gpb {

inline constexpr const char* kToolVersion = "1.0.0";

struct ScenarioResult {
    Scenario scenario;
    std::size_t unknowns = 0;
    FrequencyResponse response;
    ResonanceReport report;
    double pattern_frequency_hz = 0.0;  // best resonance, else band center
    FarFieldPattern pattern;
    SweepRow row;  // value left at 0 for plain scenarios
};

/// Full pipeline: mesh -> per-frequency solve -> figures of merit. With
/// persist, writes response.csv / pattern.csv / s11.svg / pattern_e.svg /
/// pattern_h.svg / manifest.json into scenario.out_dir (data files are
/// deterministic; timestamps live only in the manifest).
ScenarioResult run_scenario(const Scenario& scenario, bool persist = true);

/// One row per swept value, input order; failures are recorded in-row and the
/// sweep continues. With persist, each point writes into
/// `<out_dir>/value_<v>/` and the table goes to `<out_dir>/sweep.csv`.
std::vector<SweepRow> run_sweep(const SweepPlan& plan, bool persist = true);

/// Max bandwidth, tie-break max gain, then min |Im Zin| (component order
/// configurable). Throws std::runtime_error when no row is resonant.
const SweepRow& select_best(const std::vector<SweepRow>& rows, const SelectionRule& rule = {});

struct TrendAssertion {
    std::string column = "gain_dbi";  // gain_dbi | bandwidth_pct | resonance_ghz | s11_db
    bool nonincreasing = true;        // false checks nondecreasing
    double slack = 0.0;               // tolerated counter-movement per step
};

struct TrendOutcome {
    bool pass = true;
    std::vector<std::string> failures;  // per-pair diagnostics
};

/// Evaluates the monotonicity assertion over consecutive resonant rows.
TrendOutcome trend_check(const std::vector<SweepRow>& rows, const TrendAssertion& assertion);

/// Far-field solve of one scenario at a single frequency (no sweep), for
/// pattern cuts.
FarFieldPattern scenario_pattern(const Scenario& scenario, double frequency_hz);

}  // namespace gpb
