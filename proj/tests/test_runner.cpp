#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "csvio.hpp"
#include "runner.hpp"

using namespace gpb;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Scenario small_sphere_scenario(const std::string& out_dir) {
    Scenario s = parse_scenario(R"({
      "geometry": {"type": "sphere", "radius_mm": 57.5},
      "sweep": {"start_hz": 1.0e9, "stop_hz": 1.6e9, "points": 7},
      "mesh": {"edge_mm": 20.0}
    })");
    s.out_dir = out_dir;
    return s;
}

SweepRow make_row(double value, double bw, double gain, double im) {
    SweepRow r;
    r.value = value;
    r.resonant = true;
    r.zin_ohm = {45.0, im};
    r.resonance_hz = 1.3e9;
    r.s11_db = -15.0;
    r.bandwidth_pct = bw;
    r.gain_dbi = gain;
    return r;
}

}  // namespace

TEST_CASE("repeated runs produce byte-identical data files") {
    const std::string base = (std::filesystem::temp_directory_path() / "gpb_runner_det").string();
    std::filesystem::remove_all(base);
    run_scenario(small_sphere_scenario(base + "/a"));
    run_scenario(small_sphere_scenario(base + "/b"));
    for (const char* f :
         {"response.csv", "pattern.csv", "s11.svg", "pattern_e.svg", "pattern_h.svg"}) {
        INFO("file ", f);
        CHECK(slurp(base + "/a/" + f) == slurp(base + "/b/" + f));
    }

    // The manifest carries the timestamp and a hash of the exact config.
    const nlohmann::json m = nlohmann::json::parse(slurp(base + "/a/manifest.json"));
    const Scenario s = small_sphere_scenario(base + "/a");
    CHECK(m.at("config_hash").get<std::string>() ==
          content_hash_hex(serialize_scenario(s)));
    CHECK(m.at("tool_version").get<std::string>() == kToolVersion);
    CHECK(m.contains("generated_at"));

    const std::string response = slurp(base + "/a/response.csv");
    CHECK(response.rfind(kResponseCsvHeader, 0) == 0);
    CHECK(slurp(base + "/a/pattern.csv").rfind(kPatternCsvHeader, 0) == 0);
    std::filesystem::remove_all(base);
}

TEST_CASE("sweep records in-row failures and keeps going") {
    const std::string base = (std::filesystem::temp_directory_path() / "gpb_runner_sweep").string();
    std::filesystem::remove_all(base);
    SweepPlan plan;
    plan.base = small_sphere_scenario(base);
    plan.parameter = "mesh.edge_mm";
    plan.values = {20.0, 0.5};  // the second value blows the triangle budget

    const std::vector<SweepRow> rows = run_sweep(plan);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].note.empty());
    CHECK(rows[1].resonant == false);
    CHECK_FALSE(rows[1].note.empty());

    const std::string csv = slurp(base + "/sweep.csv");
    CHECK(csv.rfind(kSweepCsvHeader, 0) == 0);
    CHECK(csv.find(rows[1].note) != std::string::npos);
    CHECK(std::filesystem::exists(base + "/value_20/response.csv"));
    std::filesystem::remove_all(base);
}

TEST_CASE("selection rule: ordered components with ties") {
    std::vector<SweepRow> rows;
    rows.push_back(make_row(10, 8.0, 3.0, -20.0));
    rows.push_back(make_row(20, 12.0, 1.0, -5.0));
    rows.push_back(make_row(30, 12.0, 2.5, 4.0));
    rows.push_back(make_row(40, 12.0, 2.5, -2.0));

    // Bandwidth ties between rows 1-3; gain ties between rows 2-3; the
    // smallest |Im Zin| settles it.
    CHECK(select_best(rows).value == doctest::Approx(40));
    CHECK(select_best(rows, SelectionRule{{"gain"}}).value == doctest::Approx(10));
    CHECK(select_best(rows, SelectionRule{{"min_im_zin"}}).value == doctest::Approx(40));

    // Non-resonant rows never win, and an all-dead sweep throws.
    SweepRow dead;
    dead.value = 99;
    dead.bandwidth_pct = 100.0;
    rows.push_back(dead);
    CHECK(select_best(rows).value == doctest::Approx(40));
    CHECK_THROWS_AS(select_best({dead}), std::runtime_error);
}

TEST_CASE("trend checks honor direction and slack") {
    std::vector<SweepRow> rows;
    rows.push_back(make_row(1, 10.0, 4.0, 0));
    rows.push_back(make_row(2, 9.0, 3.8, 0));
    rows.push_back(make_row(3, 9.2, 2.0, 0));

    TrendAssertion falling;
    falling.column = "gain_dbi";
    CHECK(trend_check(rows, falling).pass);

    TrendAssertion bw;
    bw.column = "bandwidth_pct";
    CHECK_FALSE(trend_check(rows, bw).pass);
    CHECK_FALSE(trend_check(rows, bw).failures.empty());
    bw.slack = 0.25;  // 9.0 -> 9.2 is within slack
    CHECK(trend_check(rows, bw).pass);

    TrendAssertion rising;
    rising.column = "gain_dbi";
    rising.nonincreasing = false;
    CHECK_FALSE(trend_check(rows, rising).pass);

    // Non-resonant rows are skipped, not treated as zeros.
    SweepRow dead;
    dead.value = 2.5;
    rows.insert(rows.begin() + 2, dead);
    CHECK(trend_check(rows, falling).pass);
}

TEST_CASE("cone scenarios extend the swept band to cover the upper resonance") {
    Scenario s = parse_scenario(R"({
      "geometry": {"type": "planar_cone", "side_mm": 115.0,
                   "cone_radius_mm": 28.75, "cone_height_mm": 28.75},
      "sweep": {"start_hz": 0.8e9, "stop_hz": 1.8e9, "points": 6},
      "mesh": {"edge_mm": 18.0}
    })");
    const ScenarioResult r = run_scenario(s, /*persist=*/false);
    REQUIRE_FALSE(r.response.samples.empty());
    CHECK(r.response.samples.back().frequency_hz == doctest::Approx(3.5e9).epsilon(0.01));
    // The grid spacing stays close to the requested 0.2 GHz.
    const double step =
        r.response.samples[1].frequency_hz - r.response.samples[0].frequency_hz;
    CHECK(step == doctest::Approx(0.2e9).epsilon(0.05));
}
