// Exercises the shared-library C API end to end, including an independent
// binary-STL reader so triangle counts are verified without trusting the
// library's own writer.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "gpbench.h"

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = temp_path(name);
    std::ofstream(path) << body;
    return path;
}

const char* kScenario = R"({
  "geometry": {"type": "sphere", "radius_mm": 57.5},
  "sweep": {"start_hz": 1.1e9, "stop_hz": 1.4e9, "points": 4},
  "mesh": {"edge_mm": 20.0}
})";

// Binary STL: 80-byte header, uint32 triangle count, 50 bytes per facet.
std::uint32_t stl_triangle_count(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    in.seekg(0, std::ios::end);
    const std::streamoff size = in.tellg();
    REQUIRE(size >= 84);
    in.seekg(80);
    std::uint32_t n = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    CHECK(size == 84 + static_cast<std::streamoff>(n) * 50);
    return n;
}

}  // namespace

TEST_CASE("version and error-string basics") {
    CHECK(std::string(gpb_version()) == "1.0.0");
    CHECK(gpb_last_error() != nullptr);
}

TEST_CASE("mesh handle: create, count, STL round-trip, report") {
    const std::string scn = write_temp("capi_scn.json", kScenario);
    gpb_mesh* mesh = nullptr;
    REQUIRE(gpb_mesh_create(scn.c_str(), 0.0, &mesh) == GPB_OK);
    REQUIRE(mesh != nullptr);

    size_t n = 0;
    REQUIRE(gpb_mesh_triangle_count(mesh, &n) == GPB_OK);
    CHECK(n > 100);

    const std::string stl = temp_path("capi_mesh.stl");
    REQUIRE(gpb_mesh_write_stl(mesh, stl.c_str()) == GPB_OK);
    CHECK(stl_triangle_count(stl) == n);

    char* report = nullptr;
    REQUIRE(gpb_mesh_report_json(mesh, &report) == GPB_OK);
    REQUIRE(report != nullptr);
    const std::string text(report);
    gpb_string_free(report);
    CHECK(text.find("\"triangles\"") != std::string::npos);
    CHECK(text.find("\"euler_characteristic\"") != std::string::npos);

    // A finer target edge produces a strictly denser mesh.
    gpb_mesh* fine = nullptr;
    REQUIRE(gpb_mesh_create(scn.c_str(), 10.0, &fine) == GPB_OK);
    size_t n_fine = 0;
    REQUIRE(gpb_mesh_triangle_count(fine, &n_fine) == GPB_OK);
    CHECK(n_fine > n);
    gpb_mesh_free(fine);
    gpb_mesh_free(mesh);
    std::filesystem::remove(stl);
}

TEST_CASE("error paths return structured codes and messages") {
    gpb_mesh* mesh = nullptr;
    CHECK(gpb_mesh_create(nullptr, 0.0, &mesh) == GPB_ERR_INVALID_ARGUMENT);
    CHECK(gpb_mesh_create("/nonexistent/file.json", 0.0, &mesh) != GPB_OK);
    CHECK(std::strlen(gpb_last_error()) > 0);

    const std::string bad = write_temp("capi_bad.json", R"({"geometry": {"type": "hexagon"}})");
    CHECK(gpb_mesh_create(bad.c_str(), 0.0, &mesh) == GPB_ERR_INVALID_ARGUMENT);
    CHECK(std::string(gpb_last_error()).find("hexagon") != std::string::npos);

    double v = 0.0;
    CHECK(gpb_skin_depth_mm(-1.0, 0.0, &v) == GPB_ERR_INVALID_ARGUMENT);
    CHECK(gpb_skin_depth_mm(1.3e9, 0.0, nullptr) == GPB_ERR_INVALID_ARGUMENT);
    CHECK(gpb_pattern_cut("x.json", 1.3e9, 'Q', "/tmp/x.csv") == GPB_ERR_INVALID_ARGUMENT);
    CHECK(gpb_analytic_pattern(1.0, 1, temp_path("capi_one.csv").c_str()) ==
          GPB_ERR_INVALID_ARGUMENT);
    CHECK(gpb_run_scenario(nullptr, nullptr) == GPB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fabrication helpers through the C surface") {
    double mm = 0.0;
    REQUIRE(gpb_skin_depth_mm(1.3e9, 0.0, &mm) == GPB_OK);
    CHECK(mm == doctest::Approx(1.833e-3).epsilon(0.01));

    // Halved conductivity grows the depth by sqrt(2).
    double mm_half = 0.0;
    REQUIRE(gpb_skin_depth_mm(1.3e9, 2.9e7, &mm_half) == GPB_OK);
    CHECK(mm_half == doctest::Approx(mm * std::sqrt(2.0)).epsilon(1e-6));

    const std::string ref = write_temp(
        "capi_ref.json", R"({"area_mm2": 1000, "current_a": 1.2, "duration_h": 4, "thickness_mm": 0.1})");
    double amps = 0.0;
    REQUIRE(gpb_plating_current_a(2000.0, ref.c_str(), 4.0, &amps) == GPB_OK);
    CHECK(amps == doctest::Approx(2.4));
    CHECK(gpb_plating_current_a(2000.0, ref.c_str(), 0.0, &amps) == GPB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("analytic pattern export by extension") {
    const std::string csv = temp_path("capi_apat.csv");
    REQUIRE(gpb_analytic_pattern(1.5707963, 19, csv.c_str()) == GPB_OK);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta_deg,magnitude,db");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 19);

    const std::string svg = temp_path("capi_apat.svg");
    REQUIRE(gpb_analytic_pattern(1.5707963, 91, svg.c_str()) == GPB_OK);
    std::ifstream sin(svg);
    std::string all((std::istreambuf_iterator<char>(sin)), std::istreambuf_iterator<char>());
    CHECK(all.rfind("<?xml", 0) == 0);

    CHECK(gpb_analytic_pattern(1.0, 10, temp_path("capi_apat.txt").c_str()) ==
          GPB_ERR_INVALID_ARGUMENT);
    std::filesystem::remove(csv);
    std::filesystem::remove(svg);
}

TEST_CASE("fixtures check runs through the C surface") {
    int ok = -1;
    char* report = nullptr;
    REQUIRE(gpb_fixtures_check("data/fixtures", &ok, &report) == GPB_OK);
    REQUIRE(report != nullptr);
    const std::string text(report);
    gpb_string_free(report);
    CHECK(ok == 1);
    CHECK(text.find("[PASS]") != std::string::npos);
    CHECK(text.find("[FAIL]") == std::string::npos);

    // A missing directory is reported as a failing check, not a crash.
    int missing_ok = -1;
    REQUIRE(gpb_fixtures_check("/nonexistent", &missing_ok, nullptr) == GPB_OK);
    CHECK(missing_ok == 0);
}
