#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "config.hpp"
#include "csvio.hpp"
#include "svgplot.hpp"

using namespace gpb;

namespace {

// A minimal valid scenario body reused by several cases.
const char* kSphereScenario = R"({
  "geometry": {"type": "sphere", "radius_mm": 57.5},
  "coax": {"element_mm": 57.5, "gap_mm": 2.0},
  "sweep": {"start_hz": 1.0e9, "stop_hz": 1.6e9, "points": 7},
  "mesh": {"edge_mm": 12.0},
  "output": {"dir": "out/x"}
})";

bool balanced_svg(const std::string& svg) {
    return svg.rfind("<?xml", 0) == 0 && svg.find("<svg") != std::string::npos &&
           svg.find("</svg>") == svg.size() - std::string("</svg>\n").size();
}

}  // namespace

TEST_CASE("scenario parsing: defaults, explicit values, validation") {
    // [TRIVIAL] only the geometry section is mandatory; everything else takes
    // the documented defaults.
    CHECK_THROWS_AS(parse_scenario("{}"), std::invalid_argument);
    Scenario d = parse_scenario(R"({"geometry": {"type": "planar"}})");
    CHECK(std::holds_alternative<PlanarSpec>(d.geometry));
    CHECK(d.sweep.start_hz == doctest::Approx(0.8e9));
    CHECK(d.sweep.stop_hz == doctest::Approx(1.8e9));
    CHECK(d.sweep.points == 51);
    CHECK(d.edge_mm == doctest::Approx(12.0));
    CHECK(d.coax.element_mm == doctest::Approx(57.5));

    Scenario s = parse_scenario(kSphereScenario);
    REQUIRE(std::holds_alternative<SphereSpec>(s.geometry));
    CHECK(std::get<SphereSpec>(s.geometry).radius_mm == doctest::Approx(57.5));
    CHECK(s.sweep.points == 7);
    CHECK(s.out_dir == "out/x");

    CHECK_THROWS_AS(
        parse_scenario(R"({"geometry": {"type": "planar"}, "sweep": {"points": 1}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario(
                        R"({"geometry": {"type": "planar"},
                            "sweep": {"start_hz": 2e9, "stop_hz": 1e9}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario(R"({"geometry": {"type": "planar"}, "mesh": {"edge_mm": -1}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("not json"), std::invalid_argument);
}

TEST_CASE("unknown keys are rejected with the full key path") {
    auto expect_path = [](const char* text, const char* path) {
        try {
            parse_scenario(text);
            FAIL_CHECK("expected rejection for path " << path);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(path) != std::string::npos);
        }
    };
    expect_path(R"({"geometry": {"type": "planar"}, "bogus": 1})", "bogus");
    expect_path(R"({"geometry": {"type": "sphere", "side_mm": 10}})", "geometry.side_mm");
    expect_path(R"({"geometry": {"type": "planar"}, "coax": {"inner_radius_mm": 1}})",
                "coax.inner_radius_mm");
    expect_path(R"({"geometry": {"type": "planar"}, "sweep": {"start": 1}})", "sweep.start");

    CHECK_THROWS_AS(parse_scenario(R"({"geometry": {"type": "hexagon"}})"),
                    std::invalid_argument);
}

TEST_CASE("scenario serialization round-trips byte-for-byte") {
    Scenario s = parse_scenario(kSphereScenario);
    const std::string once = serialize_scenario(s);
    const std::string twice = serialize_scenario(parse_scenario(once));
    CHECK(once == twice);
    CHECK(once.back() == '\n');
}

TEST_CASE("sweep plan parsing and parameter application") {
    const std::string plan_text = std::string(R"({
      "base": )") + kSphereScenario + R"(,
      "parameter": "geometry.radius_mm",
      "values_mm": [40.0, 57.5, 80.0],
      "rule": {"components": ["gain"]}
    })";
    SweepPlan p = parse_sweep(plan_text);
    CHECK(p.parameter == "geometry.radius_mm");
    REQUIRE(p.values.size() == 3);
    CHECK(p.values[1] == doctest::Approx(57.5));
    CHECK(p.rule.components == std::vector<std::string>{"gain"});
    CHECK(serialize_sweep(p) == serialize_sweep(parse_sweep(serialize_sweep(p))));

    Scenario s = p.base;
    apply_parameter(s, "geometry.radius_mm", 80.0);
    CHECK(std::get<SphereSpec>(s.geometry).radius_mm == doctest::Approx(80.0));
    apply_parameter(s, "mesh.edge_mm", 9.0);
    CHECK(s.edge_mm == doctest::Approx(9.0));
    CHECK_THROWS_AS(apply_parameter(s, "geometry.side_mm", 10.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_parameter(s, "geometry.type", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_parameter(s, "coax.element_mm", 50.0), std::invalid_argument);

    // A plan whose parameter no value satisfies must be rejected up front.
    CHECK_THROWS_AS(parse_sweep(std::string(R"({"base": )") + kSphereScenario +
                                R"(, "parameter": "geometry.nope_mm", "values_mm": [1, 2]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep(std::string(R"({"base": )") + kSphereScenario +
                                R"(, "parameter": "geometry.radius_mm", "values_mm": [1]})"),
                    std::invalid_argument);
}

TEST_CASE("content hash is stable and input-sensitive") {
    const std::string h1 = content_hash_hex("abc");
    CHECK(h1 == content_hash_hex("abc"));
    CHECK(h1 != content_hash_hex("abd"));
    CHECK(h1.size() == 16);
    // [TRIVIAL] FNV-1a 64-bit offset basis for the empty string.
    CHECK(content_hash_hex("") == "cbf29ce484222325");
}

TEST_CASE("CSV schemas are locked and formatting is deterministic") {
    CHECK(std::string(kResponseCsvHeader) == "freq_hz,re_zin_ohm,im_zin_ohm,s11_db");
    CHECK(std::string(kPatternCsvHeader) == "theta_deg,phi_deg,gain_dbi,co_db,cross_db");
    CHECK(std::string(kSweepCsvHeader) ==
          "value_mm,re_zin_ohm,im_zin_ohm,resonance_ghz,s11_db,bandwidth_pct,gain_dbi,note");

    CHECK(format_g9(1.0) == "1");
    CHECK(format_g9(0.1) == "0.1");
    CHECK(format_g9(1.3e9) == "1.3e+09");
    CHECK(format_g9(-12.3456789012) == "-12.3456789");
    CHECK(format_g9(1.0) == format_g9(1.0));
}

TEST_CASE("sweep CSV: resonant, non-resonant, and truncated rows") {
    SweepRow good;
    good.value = 55.0;
    good.resonant = true;
    good.zin_ohm = {48.0, -3.0};
    good.resonance_hz = 1.31e9;
    good.s11_db = -21.0;
    good.bandwidth_pct = 14.6;
    good.gain_dbi = 2.9;

    SweepRow bad;
    bad.value = 10.0;

    SweepRow truncated = good;
    truncated.value = 60.0;
    truncated.bandwidth_truncated = true;

    const std::string csv = sweep_csv({good, bad, truncated});
    CHECK(csv.rfind(kSweepCsvHeader, 0) == 0);
    CHECK(csv.find("55,48,-3,1.31,-21,14.6,2.9,") != std::string::npos);
    CHECK(csv.find("10,N/A,N/A,N/A,N/A,N/A,N/A,not resonant") != std::string::npos);
    CHECK(csv.find("14.6>") != std::string::npos);

    SweepRow failed = bad;
    failed.note = "mesh generation failed";
    CHECK(sweep_csv({failed}).find("mesh generation failed") != std::string::npos);
}

TEST_CASE("polar SVG output is well-formed and escapes markup") {
    PolarPlotSpec spec;
    spec.title = "a<b & c>\"d\"";
    PolarTrace t;
    t.label = "trace";
    for (int i = 0; i <= 36; ++i) t.samples.push_back({i * 0.1745, -0.5 * i});
    spec.traces.push_back(t);

    const std::string svg = emit_polar_svg(spec);
    CHECK(balanced_svg(svg));
    CHECK(svg.find("a&lt;b &amp; c&gt;") != std::string::npos);
    CHECK(svg.find('<') != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    // Deterministic: same input, same bytes.
    CHECK(svg == emit_polar_svg(spec));

    CHECK_THROWS_AS(emit_polar_svg(PolarPlotSpec{}), std::invalid_argument);
    PolarPlotSpec inverted = spec;
    inverted.db_min = 0.0;
    inverted.db_max = -40.0;
    CHECK_THROWS_AS(emit_polar_svg(inverted), std::invalid_argument);
}

TEST_CASE("S11 SVG output is well-formed") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 11; ++i) pts.push_back({0.8e9 + i * 0.1e9, -2.0 - i});
    const std::string svg = emit_s11_svg(pts, "reflection");
    CHECK(balanced_svg(svg));
    CHECK(svg.find("reflection") != std::string::npos);
    CHECK_THROWS_AS(emit_s11_svg({}, "empty"), std::invalid_argument);
}
