#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "efie.hpp"

namespace gpb {

inline constexpr double kReferenceImpedanceOhm = 50.0;
inline constexpr double kGainFloorDb = -80.0;

/// 20 log10 |(Z - Z0)/(Z + Z0)|, clamped at -100 dB.
/// Throws std::domain_error for Z0 <= 0 or Re(Z) <= -Z0.
double s11_db(std::complex<double> zin_ohm, double z0_ohm = kReferenceImpedanceOhm);

struct ResponseSample {
    double frequency_hz = 0.0;
    std::complex<double> zin_ohm;
    double s11_db = 0.0;
};

struct FrequencyResponse {
    std::vector<ResponseSample> samples;  // strictly increasing frequency
    double z0_ohm = kReferenceImpedanceOhm;

    void validate() const;  // throws std::invalid_argument
};

struct Resonance {
    double frequency_hz = 0.0;       // parabolic-refined S11 local minimum
    double s11_db = 0.0;
    std::complex<double> zin_ohm;    // interpolated at the refined frequency
    double bandwidth_pct = 0.0;      // -10 dB fractional bandwidth
    double f_lo_hz = 0.0, f_hi_hz = 0.0;
    bool bandwidth_truncated = false;  // -10 dB interval exits the swept band
};

struct ResonanceReport {
    std::vector<Resonance> resonances;  // ascending frequency
    std::optional<std::size_t> best;    // deepest S11
};

/// Local minima of S11 below -10 dB with interpolated band edges.
ResonanceReport resonances(const FrequencyResponse& response);

struct FarFieldGrid {
    std::vector<double> theta_rad;
    std::vector<double> phi_rad;

    static FarFieldGrid regular(int n_theta, int n_phi);  // inclusive poles, phi open
};

struct FarFieldPattern {
    std::vector<double> theta_rad, phi_rad;
    // Row-major [i_theta * n_phi + i_phi]; fields at r = 1 m with the
    // e^{-jkr}/r phase factor dropped.
    std::vector<std::complex<double>> e_theta, e_phi;
    std::vector<double> gain_dbi;          // referenced to input power, floor -80
    std::vector<double> co_db, cross_db;   // Ludwig-3 partial gains, floor -80
    double p_in_w = 0.0;                   // 1/2 Re(V I*)
    double p_rad_w = 0.0;                  // far-field integrated power
    double frequency_hz = 0.0;

    std::size_t idx(std::size_t it, std::size_t ip) const { return it * phi_rad.size() + ip; }
};

/// Radiation integral of the solved currents over the grid; in image-ground
/// mode the mirrored currents are added and the lower half space is zero.
FarFieldPattern far_field(const CurrentSolution& solution, const MediumParams& medium,
                          const FarFieldGrid& grid, double co_pol_phi0_rad = 0.0);

struct CoCross {
    std::vector<double> co_db, cross_db;  // partial gains, floor -80
};

/// Ludwig-3 decomposition against a vertical reference at azimuth phi0.
/// Power closure: |co|^2 + |cross|^2 = |E|^2 pointwise.
CoCross co_cross_split(const FarFieldPattern& pattern, double phi0_rad = 0.0);

enum class CutPlane { E, H };

struct CutSample {
    double angle_rad = 0.0;  // theta for E cuts; phi for H cuts
    double gain_dbi = 0.0;
    double normalized_db = 0.0;
};

/// E-plane: phi = {phi0, phi0+pi} meridian (angle spans 0..2pi around the
/// polar plot); H-plane: theta = 90 deg ring. Throws if the plane is not
/// sampled by the pattern grid.
std::vector<CutSample> pattern_cut(const FarFieldPattern& pattern, CutPlane plane,
                                   double phi0_rad = 0.0);

/// Peak of the gain grid, dBi.
double peak_gain(const FarFieldPattern& pattern);

/// Directivity normalization diagnostic: (1/4pi) integral of D dOmega,
/// computed with the pattern's own grid; 1.0 for a consistent pattern.
double directivity_normalization(const FarFieldPattern& pattern);

}  // namespace gpb
