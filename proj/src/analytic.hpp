#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace gpb {

/// Free-space (or user-supplied) medium, SI units. Time convention e^{+jwt},
/// so propagation carries e^{-jkr}.
struct MediumParams {
    double frequency_hz = 0.0;
    double wavelength_m = 0.0;
    double wavenumber = 0.0;       // rad/m
    double eta_ohm = 0.0;          // intrinsic impedance
    double conductivity_spm = 0.0; // of the conductor, for skin-depth use
    double mu_hpm = 0.0;

    static MediumParams free_space(double frequency_hz);
    void validate() const;  // throws std::domain_error
};

struct MonopoleParams {
    double h_m = 0.0;                     // element length above ground
    double i0_a = 1.0;                    // drive current magnitude
    std::complex<double> rv = {1.0, 0.0}; // ground reflection coefficient
};

struct ObservationPoint {
    double r_m = 0.0;
    double theta_rad = 0.0;  // 0 = zenith
    double phi_rad = 0.0;    // unused: fields are azimuthally symmetric
};

struct FieldSample {
    std::complex<double> e_direct;
    std::complex<double> e_reflected;
    std::complex<double> e_total;
    double r1_m = 0.0;
    double r2_m = 0.0;
};

enum class DistanceMode { Exact, FarField };

/// Law-of-cosines distances from the element tip image points.
std::pair<double, double> image_distances_exact(const ObservationPoint& obs, double h_m);

/// First-order binomial expansion, valid for r >> h. When r < 10 h the
/// result is still produced and *approx_out_of_range (if given) is set.
std::pair<double, double> image_distances_farfield(const ObservationPoint& obs, double h_m,
                                                   bool* approx_out_of_range = nullptr);

/// Direct + image-reflected field of a constant-current vertical element
/// over an infinite ground at z = 0; identically zero below the ground.
FieldSample field_components(const MediumParams& medium, const MonopoleParams& monopole,
                             const ObservationPoint& obs, DistanceMode mode);

struct PatternPoint {
    double theta_rad = 0.0;
    double linear = 0.0;  // normalized field magnitude, peak = 1
    double db = 0.0;      // 20 log10(linear); -inf at exact nulls
};

/// Normalized total-field pattern F(theta) = sin(theta) 2cos(kh cos(theta))
/// above ground, 0 below, peak-normalized to 0 dB.
std::vector<PatternPoint> total_field_pattern(double kh, const std::vector<double>& theta_rad);
std::vector<PatternPoint> total_field_pattern(const MediumParams& medium,
                                              const MonopoleParams& monopole,
                                              const std::vector<double>& theta_rad);

/// dB floor applied when patterns are written to files.
inline constexpr double kPatternFloorDb = -80.0;

}  // namespace gpb
