#pragma once

#include <string>
#include <vector>

namespace gpb {

struct PolarTrace {
    std::string label;
    // Samples as (angle_rad, level_db). Angle convention: 0 at the top of the
    // plot, increasing clockwise (antenna-pattern convention).
    std::vector<std::pair<double, double>> samples;
};

struct PolarPlotSpec {
    std::vector<PolarTrace> traces;
    double db_min = -40.0;  // outer ring is db_max, center is db_min
    double db_max = 0.0;
    std::string title;
};

/// Self-contained SVG 1.1 polar plot with labeled dB rings and a legend.
/// Throws std::invalid_argument for empty traces or a bad dB range.
std::string emit_polar_svg(const PolarPlotSpec& spec);

/// Rectangular S11-vs-frequency plot (GHz on x, dB on y), self-contained SVG.
std::string emit_s11_svg(const std::vector<std::pair<double, double>>& freq_hz_s11_db,
                         const std::string& title);

}  // namespace gpb
