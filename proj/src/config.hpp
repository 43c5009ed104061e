#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"

namespace gpb {

struct FrequencyPlan {
    double start_hz = 0.8e9;
    double stop_hz = 1.8e9;
    int points = 51;

    void validate() const;  // throws std::invalid_argument
};

struct Scenario {
    GroundPlaneSpec geometry;  // defaults to the standard planar ground
    CoaxModel coax;
    FrequencyPlan sweep;
    double edge_mm = 12.0;
    std::string out_dir = "out";

    void validate() const;
};

struct SelectionRule {
    // Ordered figure-of-merit components: "bandwidth" (max), "gain" (max),
    // "min_im_zin" (min |Im Zin|).
    std::vector<std::string> components = {"bandwidth", "gain", "min_im_zin"};
};

struct SweepPlan {
    Scenario base;
    std::string parameter;       // e.g. "geometry.radius_mm"
    std::vector<double> values;  // mm (or count for integer parameters)
    SelectionRule rule;

    void validate() const;
};

/// Strict parsers: unknown keys are rejected with the full key path.
Scenario parse_scenario(const std::string& json_text);
Scenario parse_scenario_file(const std::string& path);
SweepPlan parse_sweep(const std::string& json_text);
SweepPlan parse_sweep_file(const std::string& path);

std::string serialize_scenario(const Scenario& s);
std::string serialize_sweep(const SweepPlan& p);

/// Sets the swept parameter (dotted path into the scenario) to `value`.
/// Throws std::invalid_argument if the path does not name a numeric field of
/// the scenario's geometry type.
void apply_parameter(Scenario& scenario, const std::string& path, double value);

/// FNV-1a 64-bit content hash, hex string; used for the run manifest.
std::string content_hash_hex(const std::string& bytes);

}  // namespace gpb
