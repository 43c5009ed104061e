#include "gpbench.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "analytic.hpp"
#include "config.hpp"
#include "constants.hpp"
#include "csvio.hpp"
#include "fab.hpp"
#include "fixtures.hpp"
#include "fom.hpp"
#include "geometry.hpp"
#include "runner.hpp"
#include "svgplot.hpp"

namespace {

thread_local std::string g_last_error;

gpb_status fail(gpb_status code, const std::string& what) {
    g_last_error = what;
    return code;
}

template <typename F>
gpb_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        return fail(GPB_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(GPB_ERR_RUNTIME, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

struct gpb_mesh {
    gpb::TriMesh mesh;
};

extern "C" {

const char* gpb_version(void) { return gpb::kToolVersion; }

const char* gpb_last_error(void) { return g_last_error.c_str(); }

void gpb_string_free(char* s) { std::free(s); }

gpb_status gpb_mesh_create(const char* scenario_path, double edge_mm, gpb_mesh** out) {
    if (!scenario_path || !out) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        gpb::Scenario s = gpb::parse_scenario_file(scenario_path);
        const double edge = edge_mm > 0.0 ? edge_mm : s.edge_mm;
        auto* handle = new gpb_mesh{gpb::generate(s.geometry, s.coax, edge)};
        *out = handle;
        return GPB_OK;
    });
}

gpb_status gpb_mesh_triangle_count(const gpb_mesh* mesh, size_t* out) {
    if (!mesh || !out) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    *out = mesh->mesh.triangles.size();
    return GPB_OK;
}

gpb_status gpb_mesh_write_stl(const gpb_mesh* mesh, const char* path) {
    if (!mesh || !path) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        gpb::write_stl(mesh->mesh, path);
        return GPB_OK;
    });
}

gpb_status gpb_mesh_report_json(const gpb_mesh* mesh, char** out) {
    if (!mesh || !out) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const gpb::MeshReport r = gpb::mesh_report(mesh->mesh);
        nlohmann::json j;
        j["triangles"] = r.faces;
        j["vertices"] = r.vertices;
        j["edges"] = r.edges;
        j["boundary_edges"] = r.boundary_edges;
        j["total_area_mm2"] = r.total_area_mm2();
        j["metal_area_mm2"] = r.area_metal_mm2;
        j["masked_area_mm2"] = r.area_masked_mm2;
        j["feed_area_mm2"] = r.area_feed_mm2;
        j["euler_characteristic"] = r.euler_characteristic;
        j["min_angle_deg"] = r.min_angle_deg;
        j["edge_mm_target"] = mesh->mesh.target_edge_mm;
        j["provenance"] = mesh->mesh.provenance;
        *out = dup_string(j.dump(2) + "\n");
        return GPB_OK;
    });
}

void gpb_mesh_free(gpb_mesh* mesh) { delete mesh; }

gpb_status gpb_run_scenario(const char* scenario_path, const char* out_dir) {
    if (!scenario_path) return fail(GPB_ERR_INVALID_ARGUMENT, "null scenario path");
    return guarded([&] {
        gpb::Scenario s = gpb::parse_scenario_file(scenario_path);
        if (out_dir && *out_dir) s.out_dir = out_dir;
        gpb::run_scenario(s, true);
        return GPB_OK;
    });
}

gpb_status gpb_run_sweep(const char* plan_path, const char* out_dir) {
    if (!plan_path) return fail(GPB_ERR_INVALID_ARGUMENT, "null plan path");
    return guarded([&] {
        gpb::SweepPlan p = gpb::parse_sweep_file(plan_path);
        if (out_dir && *out_dir) p.base.out_dir = out_dir;
        gpb::run_sweep(p, true);
        return GPB_OK;
    });
}

gpb_status gpb_pattern_cut(const char* scenario_path, double freq_hz, char cut,
                           const char* out_path) {
    if (!scenario_path || !out_path) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    if (cut != 'E' && cut != 'H') return fail(GPB_ERR_INVALID_ARGUMENT, "cut must be 'E' or 'H'");
    if (!(freq_hz > 0.0)) return fail(GPB_ERR_INVALID_ARGUMENT, "frequency must be positive");
    return guarded([&] {
        gpb::Scenario s = gpb::parse_scenario_file(scenario_path);
        gpb::FarFieldPattern pat = gpb::scenario_pattern(s, freq_hz);
        const auto samples =
            gpb::pattern_cut(pat, cut == 'E' ? gpb::CutPlane::E : gpb::CutPlane::H);
        const std::string path(out_path);
        if (ends_with(path, ".svg")) {
            gpb::PolarPlotSpec spec;
            spec.title = gpb::spec_name(s.geometry) + (cut == 'E' ? " E-plane" : " H-plane");
            gpb::PolarTrace trace;
            trace.label = cut == 'E' ? "E-plane" : "H-plane";
            for (const auto& c : samples) trace.samples.push_back({c.angle_rad, c.normalized_db});
            spec.traces.push_back(std::move(trace));
            gpb::write_text_file(path, gpb::emit_polar_svg(spec));
        } else if (ends_with(path, ".csv")) {
            std::ostringstream os;
            os << "angle_deg,gain_dbi,normalized_db\n";
            for (const auto& c : samples)
                os << gpb::format_g9(c.angle_rad * 180.0 / gpb::kPi) << ","
                   << gpb::format_g9(c.gain_dbi) << "," << gpb::format_g9(c.normalized_db) << "\n";
            gpb::write_text_file(path, os.str());
        } else {
            throw std::invalid_argument("output must end in .csv or .svg");
        }
        return GPB_OK;
    });
}

gpb_status gpb_analytic_pattern(double kh, int points, const char* out_path) {
    if (!out_path) return fail(GPB_ERR_INVALID_ARGUMENT, "null output path");
    return guarded([&] {
        if (points < 2) throw std::invalid_argument("points must be >= 2");
        std::vector<double> theta;
        for (int i = 0; i < points; ++i) theta.push_back(gpb::kPi * i / (points - 1));
        const std::vector<gpb::PatternPoint> pat = gpb::total_field_pattern(kh, theta);
        const std::string path(out_path);
        if (ends_with(path, ".svg")) {
            gpb::PolarPlotSpec spec;
            std::ostringstream title;
            title << "vertical element over perfect ground, kh=" << kh;
            spec.title = title.str();
            gpb::PolarTrace trace;
            trace.label = "normalized field";
            // Mirror the upper-half pattern across the axis for the usual
            // full polar presentation.
            for (const auto& p : pat) trace.samples.push_back({p.theta_rad, p.db});
            for (std::size_t i = pat.size(); i-- > 0;)
                trace.samples.push_back({2.0 * gpb::kPi - pat[i].theta_rad, pat[i].db});
            spec.traces.push_back(std::move(trace));
            gpb::write_text_file(path, gpb::emit_polar_svg(spec));
        } else if (ends_with(path, ".csv")) {
            std::ostringstream os;
            os << "theta_deg,magnitude,db\n";
            for (const auto& p : pat)
                os << gpb::format_g9(p.theta_rad * 180.0 / gpb::kPi) << ","
                   << gpb::format_g9(p.linear) << "," << gpb::format_g9(p.db) << "\n";
            gpb::write_text_file(path, os.str());
        } else {
            throw std::invalid_argument("output must end in .csv or .svg");
        }
        return GPB_OK;
    });
}

gpb_status gpb_skin_depth_mm(double freq_hz, double sigma_s_m, double* out_mm) {
    if (!out_mm) return fail(GPB_ERR_INVALID_ARGUMENT, "null output");
    return guarded([&] {
        gpb::SkinDepthQuery q;
        q.frequency_hz = freq_hz;
        if (sigma_s_m > 0.0) q.conductivity_s_m = sigma_s_m;
        *out_mm = gpb::skin_depth_mm(q);
        return GPB_OK;
    });
}

gpb_status gpb_plating_current_a(double target_area_mm2, const char* reference_json_path,
                                 double duration_h, double* out_a) {
    if (!reference_json_path || !out_a) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::ifstream in(reference_json_path);
        if (!in) throw std::invalid_argument(std::string("cannot open reference file: ") +
                                             reference_json_path);
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) throw std::invalid_argument("reference file is not valid JSON");
        gpb::PlatingReference ref;
        ref.area_mm2 = j.value("area_mm2", 0.0);
        ref.current_a = j.value("current_a", 0.0);
        ref.duration_h = j.value("duration_h", 0.0);
        ref.thickness_mm = j.value("thickness_mm", 0.0);
        *out_a = gpb::plating_current_a(target_area_mm2, ref, duration_h);
        return GPB_OK;
    });
}

gpb_status gpb_fixtures_check(const char* fixtures_dir, int* all_passed, char** report) {
    if (!fixtures_dir || !all_passed) return fail(GPB_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto checks = gpb::fixtures_check(fixtures_dir);
        *all_passed = gpb::all_passed(checks) ? 1 : 0;
        if (report) {
            std::ostringstream os;
            for (const auto& c : checks)
                os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " — " << c.detail << "\n";
            *report = dup_string(os.str());
        }
        return GPB_OK;
    });
}

}  // extern "C"
