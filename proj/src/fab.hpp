#pragma once

namespace gpb {

inline constexpr double kCopperConductivitySm = 5.8e7;
inline constexpr double kDefaultCoatingMultiple = 50.0;

struct SkinDepthQuery {
    double frequency_hz = 0.0;
    double conductivity_s_m = kCopperConductivitySm;
    double permeability_h_m = 1.25663706212e-6;  // mu0
};

/// delta = sqrt(2 / (omega mu sigma)), returned in millimetres.
/// Throws std::invalid_argument on non-positive inputs.
double skin_depth_mm(const SkinDepthQuery& query);

struct CoatingVerdict {
    double skin_depth_mm = 0.0;
    double ratio = 0.0;  // thickness / skin depth
    bool adequate = false;
};

/// Compares a metallization thickness against a required multiple of the skin
/// depth (default 50x, i.e. a 0.1 mm copper coat at 1.3 GHz passes).
CoatingVerdict coating_adequacy(double thickness_mm, const SkinDepthQuery& query,
                                double required_multiple = kDefaultCoatingMultiple);

struct PlatingReference {
    double area_mm2 = 0.0;
    double current_a = 0.0;
    double duration_h = 0.0;
    double thickness_mm = 0.0;  // achieved coat, informational
};

/// Equal-charge-per-unit-area scaling of a plating recipe:
/// I = I_ref * (area / area_ref) * (t_ref / t).
/// Throws std::invalid_argument on non-positive inputs.
double plating_current_a(double target_area_mm2, const PlatingReference& reference,
                         double duration_h);

/// Faraday's-law thickness estimate for copper plating (diagnostic only):
/// thickness = M * I * t / (z F rho A). Inputs in A, hours, mm^2; result mm.
double faraday_thickness_mm(double current_a, double duration_h, double area_mm2);

}  // namespace gpb
