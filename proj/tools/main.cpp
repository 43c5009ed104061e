// Command-line surface over the C API. Every subcommand is a thin wrapper:
// parse flags, call one library entry point, print the result or a
// structured error, exit 0 on success.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "gpbench.h"

namespace {

int report(gpb_status st) {
    if (st == GPB_OK) return 0;
    std::fprintf(stderr, "error: %s\n", gpb_last_error());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monopole ground-plane workbench"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gpb_version()));

    // analytic pattern --kh <v> --points <n> --out <csv|svg>
    CLI::App* analytic = app.add_subcommand("analytic", "closed-form element calculations");
    analytic->require_subcommand(1);
    CLI::App* apat = analytic->add_subcommand("pattern", "normalized pattern over perfect ground");
    double kh = 0.0;
    int points = 181;
    std::string out;
    apat->add_option("--kh", kh, "electrical height k*h (radians)")->required();
    apat->add_option("--points", points, "number of polar samples")->required();
    apat->add_option("--out", out, "output file (.csv or .svg)")->required();

    // mesh --spec <file> --edge-mm <v> --out <stl> [--report]
    CLI::App* mesh = app.add_subcommand("mesh", "generate a ground-plane mesh and export STL");
    std::string spec_file, stl_out;
    double edge_mm = 0.0;
    bool want_report = false;
    mesh->add_option("--spec", spec_file, "scenario config file")->required();
    mesh->add_option("--edge-mm", edge_mm, "target edge length (mm)")->required();
    mesh->add_option("--out", stl_out, "binary STL output path")->required();
    mesh->add_flag("--report", want_report, "print a mesh quality report (JSON)");

    // solve --scenario <file> --out-dir <dir>
    CLI::App* solve = app.add_subcommand("solve", "frequency sweep of one scenario");
    std::string scenario_file, out_dir;
    solve->add_option("--scenario", scenario_file, "scenario config file")->required();
    solve->add_option("--out-dir", out_dir, "output directory")->required();

    // sweep --plan <file> --out-dir <dir>
    CLI::App* sweep = app.add_subcommand("sweep", "parametric sweep over a value list");
    std::string plan_file, sweep_dir;
    sweep->add_option("--plan", plan_file, "sweep plan config file")->required();
    sweep->add_option("--out-dir", sweep_dir, "output directory")->required();

    // pattern --scenario <file> --freq-hz <v> --cut <E|H> --out <csv|svg>
    CLI::App* pattern = app.add_subcommand("pattern", "far-field cut at one frequency");
    std::string pat_scenario, cut = "E", pat_out;
    double freq_hz = 0.0;
    pattern->add_option("--scenario", pat_scenario, "scenario config file")->required();
    pattern->add_option("--freq-hz", freq_hz, "solve frequency (Hz)")->required();
    pattern->add_option("--cut", cut, "cut plane: E or H")->required();
    pattern->add_option("--out", pat_out, "output file (.csv or .svg)")->required();

    // fab skin-depth --freq-hz <v> [--sigma <v>]  /  fab plating ...
    CLI::App* fab = app.add_subcommand("fab", "fabrication-planning calculators");
    fab->require_subcommand(1);
    CLI::App* skin = fab->add_subcommand("skin-depth", "conductor skin depth");
    double skin_freq = 0.0, sigma = 0.0;
    skin->add_option("--freq-hz", skin_freq, "frequency (Hz)")->required();
    skin->add_option("--sigma", sigma, "conductivity (S/m), default copper");
    CLI::App* plating = fab->add_subcommand("plating", "plating current from an area ratio");
    double area_mm2 = 0.0, hours = 0.0;
    std::string ref_file;
    plating->add_option("--area-mm2", area_mm2, "target surface area (mm^2)")->required();
    plating->add_option("--ref", ref_file, "reference recipe JSON file")->required();
    plating->add_option("--hours", hours, "planned plating duration (h)")->required();

    // fixtures check
    CLI::App* fixtures = app.add_subcommand("fixtures", "reference-table utilities");
    fixtures->require_subcommand(1);
    CLI::App* fcheck = fixtures->add_subcommand("check", "trend/consistency suite");
    std::string fixtures_dir = "data/fixtures";
    fcheck->add_option("--dir", fixtures_dir, "fixtures directory (default data/fixtures)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (apat->parsed()) return report(gpb_analytic_pattern(kh, points, out.c_str()));

    if (mesh->parsed()) {
        gpb_mesh* handle = nullptr;
        gpb_status st = gpb_mesh_create(spec_file.c_str(), edge_mm, &handle);
        if (st != GPB_OK) return report(st);
        st = gpb_mesh_write_stl(handle, stl_out.c_str());
        if (st == GPB_OK && want_report) {
            char* json = nullptr;
            st = gpb_mesh_report_json(handle, &json);
            if (st == GPB_OK) {
                std::fputs(json, stdout);
                gpb_string_free(json);
            }
        }
        gpb_mesh_free(handle);
        return report(st);
    }

    if (solve->parsed()) return report(gpb_run_scenario(scenario_file.c_str(), out_dir.c_str()));
    if (sweep->parsed()) return report(gpb_run_sweep(plan_file.c_str(), sweep_dir.c_str()));

    if (pattern->parsed()) {
        if (cut != "E" && cut != "H") {
            std::fprintf(stderr, "error: --cut must be E or H\n");
            return 2;
        }
        return report(gpb_pattern_cut(pat_scenario.c_str(), freq_hz, cut[0], pat_out.c_str()));
    }

    if (skin->parsed()) {
        double mm = 0.0;
        const gpb_status st = gpb_skin_depth_mm(skin_freq, sigma, &mm);
        if (st == GPB_OK) std::printf("%.3g mm\n", mm);
        return report(st);
    }

    if (plating->parsed()) {
        double amps = 0.0;
        const gpb_status st = gpb_plating_current_a(area_mm2, ref_file.c_str(), hours, &amps);
        if (st == GPB_OK) std::printf("%.3g A\n", amps);
        return report(st);
    }

    if (fcheck->parsed()) {
        int ok = 0;
        char* text = nullptr;
        const gpb_status st = gpb_fixtures_check(fixtures_dir.c_str(), &ok, &text);
        if (st != GPB_OK) return report(st);
        std::fputs(text, stdout);
        gpb_string_free(text);
        return ok ? 0 : 1;
    }

    return 2;
}
