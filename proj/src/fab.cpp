#include "fab.hpp"

#include <cmath>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

double skin_depth_mm(const SkinDepthQuery& q) {
    if (q.frequency_hz <= 0.0 || q.conductivity_s_m <= 0.0 || q.permeability_h_m <= 0.0)
        throw std::invalid_argument("skin depth query requires positive inputs");
    const double omega = 2.0 * kPi * q.frequency_hz;
    return std::sqrt(2.0 / (omega * q.permeability_h_m * q.conductivity_s_m)) * 1e3;
}

CoatingVerdict coating_adequacy(double thickness_mm, const SkinDepthQuery& q,
                                double required_multiple) {
    if (thickness_mm < 0.0) throw std::invalid_argument("coating thickness must be >= 0");
    CoatingVerdict v;
    v.skin_depth_mm = skin_depth_mm(q);
    v.ratio = thickness_mm / v.skin_depth_mm;
    v.adequate = v.ratio >= required_multiple;
    return v;
}

double plating_current_a(double target_area_mm2, const PlatingReference& ref,
                         double duration_h) {
    if (target_area_mm2 <= 0.0 || duration_h <= 0.0 || ref.area_mm2 <= 0.0 ||
        ref.current_a <= 0.0 || ref.duration_h <= 0.0)
        throw std::invalid_argument("plating inputs must be positive");
    return ref.current_a * (target_area_mm2 / ref.area_mm2) * (ref.duration_h / duration_h);
}

double faraday_thickness_mm(double current_a, double duration_h, double area_mm2) {
    if (current_a <= 0.0 || duration_h <= 0.0 || area_mm2 <= 0.0)
        throw std::invalid_argument("faraday inputs must be positive");
    const double molar_mass_kg = 63.546e-3;   // copper
    const double valence = 2.0;               // Cu2+
    const double faraday_c = 96485.33212;
    const double density_kg_m3 = 8960.0;
    const double charge_c = current_a * duration_h * 3600.0;
    const double mass_kg = molar_mass_kg * charge_c / (valence * faraday_c);
    const double volume_m3 = mass_kg / density_kg_m3;
    return volume_m3 / (area_mm2 * 1e-6) * 1e3;
}

}  // namespace gpb
