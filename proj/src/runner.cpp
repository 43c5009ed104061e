#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "analytic.hpp"
#include "efie.hpp"
#include "rwg.hpp"
#include "svgplot.hpp"

namespace gpb {

namespace {

FrequencyPlan effective_plan(const Scenario& s) {
    FrequencyPlan p = s.sweep;
    // Cone grounds resonate far above the default band; widen automatically.
    if (std::holds_alternative<PlanarConeSpec>(s.geometry) && p.stop_hz < 3.5e9) {
        const double step = (p.stop_hz - p.start_hz) / (p.points - 1);
        p.stop_hz = 3.5e9;
        p.points = std::min(161, static_cast<int>(std::lround((p.stop_hz - p.start_hz) / step)) + 1);
    }
    return p;
}

struct SolvedScenario {
    TriMesh mesh;
    RwgBasisSet basis;
};

CurrentSolution solve_at(const RwgBasisSet& basis, const CoaxModel& coax, double frequency_hz) {
    const MediumParams med = MediumParams::free_space(frequency_hz);
    SystemMatrix sys = assemble(basis, med);
    Excitation exc;
    exc.gap_mm = coax.gap_mm;
    return solve(sys, basis, exc);
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::vector<std::pair<double, double>> cut_trace(const FarFieldPattern& pat, CutPlane plane) {
    std::vector<std::pair<double, double>> out;
    for (const CutSample& s : pattern_cut(pat, plane)) out.push_back({s.angle_rad, s.normalized_db});
    return out;
}

void persist_scenario(const ScenarioResult& r) {
    const std::string dir = r.scenario.out_dir;
    const std::string response = response_csv(r.response);
    const std::string pattern = pattern_csv(r.pattern);
    write_text_file(dir + "/response.csv", response);
    write_text_file(dir + "/pattern.csv", pattern);

    std::vector<std::pair<double, double>> s11;
    for (const ResponseSample& s : r.response.samples) s11.push_back({s.frequency_hz, s.s11_db});
    write_text_file(dir + "/s11.svg", emit_s11_svg(s11, spec_name(r.scenario.geometry) + " S11"));

    PolarPlotSpec pe;
    pe.title = spec_name(r.scenario.geometry) + " E-plane";
    pe.traces.push_back({"E-plane", cut_trace(r.pattern, CutPlane::E)});
    write_text_file(dir + "/pattern_e.svg", emit_polar_svg(pe));
    PolarPlotSpec ph;
    ph.title = spec_name(r.scenario.geometry) + " H-plane";
    ph.traces.push_back({"H-plane", cut_trace(r.pattern, CutPlane::H)});
    write_text_file(dir + "/pattern_h.svg", emit_polar_svg(ph));

    nlohmann::json manifest;
    manifest["config_hash"] = content_hash_hex(serialize_scenario(r.scenario));
    manifest["tool_version"] = kToolVersion;
    manifest["generated_at"] = iso_now();
    manifest["unknowns"] = r.unknowns;
    manifest["pattern_frequency_hz"] = r.pattern_frequency_hz;
    manifest["outputs"] = {"response.csv", "pattern.csv", "s11.svg", "pattern_e.svg",
                           "pattern_h.svg"};
    write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, bool persist) {
    scenario.validate();
    ScenarioResult r;
    r.scenario = scenario;

    TriMesh mesh = generate(scenario.geometry, scenario.coax, scenario.edge_mm);
    RwgBasisSet basis = build_basis(mesh);
    r.unknowns = basis.size();

    const FrequencyPlan plan = effective_plan(scenario);
    r.response.z0_ohm = kReferenceImpedanceOhm;
    for (int i = 0; i < plan.points; ++i) {
        const double f = plan.start_hz + (plan.stop_hz - plan.start_hz) * i / (plan.points - 1);
        try {
            CurrentSolution sol = solve_at(basis, scenario.coax, f);
            ResponseSample s;
            s.frequency_hz = f;
            s.zin_ohm = sol.zin;
            s.s11_db = s11_db(sol.zin);
            r.response.samples.push_back(s);
        } catch (const std::exception& e) {
            throw std::runtime_error("scenario `" + spec_name(scenario.geometry) + "` at " +
                                     format_g9(f) + " Hz: " + e.what());
        }
    }
    r.report = resonances(r.response);

    r.pattern_frequency_hz = 0.5 * (plan.start_hz + plan.stop_hz);
    if (r.report.best) r.pattern_frequency_hz = r.report.resonances[*r.report.best].frequency_hz;
    CurrentSolution sol = solve_at(basis, scenario.coax, r.pattern_frequency_hz);
    r.pattern = far_field(sol, MediumParams::free_space(r.pattern_frequency_hz),
                          FarFieldGrid::regular(37, 24));

    r.row.resonant = r.report.best.has_value();
    if (r.row.resonant) {
        const Resonance& res = r.report.resonances[*r.report.best];
        r.row.zin_ohm = res.zin_ohm;
        r.row.resonance_hz = res.frequency_hz;
        r.row.s11_db = res.s11_db;
        r.row.bandwidth_pct = res.bandwidth_pct;
        r.row.bandwidth_truncated = res.bandwidth_truncated;
    }
    r.row.gain_dbi = peak_gain(r.pattern);

    if (persist) persist_scenario(r);
    return r;
}

std::vector<SweepRow> run_sweep(const SweepPlan& plan, bool persist) {
    plan.validate();
    std::vector<SweepRow> rows;
    for (double v : plan.values) {
        SweepRow row;
        row.value = v;
        try {
            Scenario point = plan.base;
            apply_parameter(point, plan.parameter, v);
            std::ostringstream sub;
            sub << plan.base.out_dir << "/value_" << format_g9(v);
            point.out_dir = sub.str();
            ScenarioResult res = run_scenario(point, persist);
            row = res.row;
            row.value = v;
        } catch (const std::exception& e) {
            row.resonant = false;
            row.note = e.what();
        }
        rows.push_back(row);
    }
    if (persist) write_text_file(plan.base.out_dir + "/sweep.csv", sweep_csv(rows));
    return rows;
}

const SweepRow& select_best(const std::vector<SweepRow>& rows, const SelectionRule& rule) {
    auto metric = [](const SweepRow& r, const std::string& c) {
        if (c == "bandwidth") return r.bandwidth_pct;        // larger is better
        if (c == "gain") return r.gain_dbi;                  // larger is better
        if (c == "min_im_zin") return -std::fabs(r.zin_ohm.imag());  // larger is better
        throw std::invalid_argument("unknown selection rule component `" + c + "`");
    };
    const SweepRow* best = nullptr;
    for (const SweepRow& r : rows) {
        if (!r.resonant) continue;
        if (!best) {
            best = &r;
            continue;
        }
        for (const std::string& c : rule.components) {
            const double a = metric(r, c), b = metric(*best, c);
            const double tol = 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
            if (a > b + tol) {
                best = &r;
                break;
            }
            if (a < b - tol) break;  // strictly worse on this component
        }
    }
    if (!best) throw std::runtime_error("select_best: no resonant rows");
    return *best;
}

TrendOutcome trend_check(const std::vector<SweepRow>& rows, const TrendAssertion& a) {
    auto column = [&](const SweepRow& r) {
        if (a.column == "gain_dbi") return r.gain_dbi;
        if (a.column == "bandwidth_pct") return r.bandwidth_pct;
        if (a.column == "resonance_ghz") return r.resonance_hz / 1e9;
        if (a.column == "s11_db") return r.s11_db;
        throw std::invalid_argument("unknown trend column `" + a.column + "`");
    };
    TrendOutcome out;
    const SweepRow* prev = nullptr;
    for (const SweepRow& r : rows) {
        if (!r.resonant) continue;
        if (prev) {
            const double before = column(*prev), after = column(r);
            const bool ok = a.nonincreasing ? after <= before + a.slack : after >= before - a.slack;
            if (!ok) {
                out.pass = false;
                std::ostringstream os;
                os << a.column << (a.nonincreasing ? " rose" : " fell") << " from "
                   << format_g9(before) << " (value " << format_g9(prev->value) << ") to "
                   << format_g9(after) << " (value " << format_g9(r.value) << ")";
                out.failures.push_back(os.str());
            }
        }
        prev = &r;
    }
    return out;
}

FarFieldPattern scenario_pattern(const Scenario& scenario, double frequency_hz) {
    scenario.validate();
    TriMesh mesh = generate(scenario.geometry, scenario.coax, scenario.edge_mm);
    RwgBasisSet basis = build_basis(mesh);
    CurrentSolution sol = solve_at(basis, scenario.coax, frequency_hz);
    return far_field(sol, MediumParams::free_space(frequency_hz), FarFieldGrid::regular(37, 24));
}

}  // namespace gpb
