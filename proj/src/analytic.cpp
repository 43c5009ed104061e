#include "analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

MediumParams MediumParams::free_space(double frequency_hz) {
    MediumParams m;
    m.frequency_hz = frequency_hz;
    m.wavelength_m = kSpeedOfLight / frequency_hz;
    m.wavenumber = 2.0 * kPi / m.wavelength_m;
    m.eta_ohm = kEta0;
    m.conductivity_spm = kCopperConductivity;
    m.mu_hpm = kMu0;
    m.validate();
    return m;
}

void MediumParams::validate() const {
    if (!(frequency_hz > 0 && wavelength_m > 0 && wavenumber > 0 && eta_ohm > 0 && mu_hpm > 0))
        throw std::domain_error("MediumParams: all fields must be strictly positive");
    const double k_from_lambda = 2.0 * kPi / wavelength_m;
    if (std::fabs(wavenumber - k_from_lambda) > 1e-6 * k_from_lambda)
        throw std::domain_error("MediumParams: k and wavelength are inconsistent");
}

std::pair<double, double> image_distances_exact(const ObservationPoint& obs, double h_m) {
    if (!(obs.r_m > 0) || !(h_m > 0))
        throw std::domain_error("image distances: r and h must be positive");
    const double r = obs.r_m, h = h_m, ct = std::cos(obs.theta_rad);
    const double r1 = std::sqrt(r * r + h * h - 2.0 * r * h * ct);
    const double r2 = std::sqrt(r * r + h * h + 2.0 * r * h * ct);
    return {r1, r2};
}

std::pair<double, double> image_distances_farfield(const ObservationPoint& obs, double h_m,
                                                   bool* approx_out_of_range) {
    if (!(obs.r_m > 0) || !(h_m > 0))
        throw std::domain_error("image distances: r and h must be positive");
    if (approx_out_of_range) *approx_out_of_range = obs.r_m < 10.0 * h_m;
    const double hc = h_m * std::cos(obs.theta_rad);
    return {obs.r_m - hc, obs.r_m + hc};
}

FieldSample field_components(const MediumParams& medium, const MonopoleParams& monopole,
                             const ObservationPoint& obs, DistanceMode mode) {
    medium.validate();
    if (!(monopole.h_m > 0)) throw std::domain_error("field_components: h must be positive");
    if (obs.theta_rad < 0 || obs.theta_rad > kPi)
        throw std::domain_error("field_components: theta outside [0, pi]");

    FieldSample s;
    const auto [r1, r2] = mode == DistanceMode::Exact
                              ? image_distances_exact(obs, monopole.h_m)
                              : image_distances_farfield(obs, monopole.h_m);
    s.r1_m = r1;
    s.r2_m = r2;

    const std::complex<double> j(0.0, 1.0);
    const double k = medium.wavenumber;
    const double amp = medium.eta_ohm * k * monopole.i0_a * monopole.h_m / (4.0 * kPi);
    const double st = std::sin(obs.theta_rad);
    // theta_1 = theta_2 = theta in the shifted-origin far-field form.
    s.e_direct = j * amp * std::exp(-j * (k * r1)) / r1 * st;
    s.e_reflected = monopole.rv * j * amp * std::exp(-j * (k * r2)) / r2 * st;
    s.e_total = (obs.theta_rad > kPi / 2.0) ? std::complex<double>(0.0, 0.0)
                                            : s.e_direct + s.e_reflected;
    return s;
}

std::vector<PatternPoint> total_field_pattern(double kh, const std::vector<double>& theta_rad) {
    if (theta_rad.empty())
        throw std::invalid_argument("total_field_pattern: empty theta grid");
    std::vector<PatternPoint> out(theta_rad.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < theta_rad.size(); ++i) {
        const double th = theta_rad[i];
        double f = 0.0;
        if (th >= 0.0 && th <= kPi / 2.0 + 1e-12)
            f = std::fabs(std::sin(th) * 2.0 * std::cos(kh * std::cos(th)));
        out[i].theta_rad = th;
        out[i].linear = f;
        peak = std::max(peak, f);
    }
    if (peak <= 0.0)
        throw std::invalid_argument("total_field_pattern: grid contains no radiating angle");
    for (auto& p : out) {
        p.linear /= peak;
        p.db = p.linear > 0.0 ? 20.0 * std::log10(p.linear)
                              : -std::numeric_limits<double>::infinity();
    }
    return out;
}

std::vector<PatternPoint> total_field_pattern(const MediumParams& medium,
                                              const MonopoleParams& monopole,
                                              const std::vector<double>& theta_rad) {
    medium.validate();
    return total_field_pattern(medium.wavenumber * monopole.h_m, theta_rad);
}

}  // namespace gpb
