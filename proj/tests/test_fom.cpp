#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "constants.hpp"
#include "fom.hpp"

using namespace gpb;
using cplx = std::complex<double>;

namespace {

FrequencyResponse make_response(std::initializer_list<std::pair<double, double>> pts) {
    FrequencyResponse r;
    for (auto [f_ghz, s11] : pts) {
        ResponseSample s;
        s.frequency_hz = f_ghz * 1e9;
        s.zin_ohm = {50.0, 10.0};
        s.s11_db = s11;
        r.samples.push_back(s);
    }
    return r;
}

}  // namespace

TEST_CASE("s11 arithmetic") {
    CHECK(s11_db({50.0, 0.0}) == doctest::Approx(-100.0));
    CHECK(s11_db({45.2, 26.3}) == doctest::Approx(-11.3).epsilon(0.01));
    CHECK(s11_db({46.7, -15.8}) == doctest::Approx(-15.7).epsilon(0.01));
    CHECK_THROWS_AS(s11_db({10.0, 0.0}, -1.0), std::domain_error);
    CHECK_THROWS_AS(s11_db({-60.0, 0.0}, 50.0), std::domain_error);
}

TEST_CASE("s11 is monotone in reflection magnitude") {
    double prev = s11_db({50.0, 0.0});
    for (double im : {2.0, 5.0, 15.0, 40.0, 120.0}) {
        const double v = s11_db({50.0, im});
        CHECK(v > prev);
        prev = v;
    }
    CHECK(s11_db({50.0, 0.0}) <= s11_db({48.0, 1.0}));
}

TEST_CASE("single resonance with 15.4% bandwidth") {
    FrequencyResponse r = make_response(
        {{1.0, -5}, {1.1, -5}, {1.2, -10}, {1.3, -20}, {1.4, -10}, {1.5, -5}, {1.6, -5}});
    ResonanceReport rep = resonances(r);
    REQUIRE(rep.resonances.size() == 1);
    const Resonance& res = rep.resonances[0];
    CHECK(res.frequency_hz == doctest::Approx(1.3e9).epsilon(1e-6));
    CHECK(res.s11_db == doctest::Approx(-20.0).epsilon(0.01));
    CHECK(res.bandwidth_pct == doctest::Approx(100.0 * 0.2 / 1.3).epsilon(0.01));
    CHECK(res.f_lo_hz == doctest::Approx(1.2e9).epsilon(1e-6));
    CHECK(res.f_hi_hz == doctest::Approx(1.4e9).epsilon(1e-6));
    CHECK_FALSE(res.bandwidth_truncated);
    CHECK(res.f_lo_hz <= res.frequency_hz);
    CHECK(res.frequency_hz <= res.f_hi_hz);
    REQUIRE(rep.best.has_value());
    CHECK(*rep.best == 0);
}

TEST_CASE("flat shallow curve yields an empty report") {
    FrequencyResponse r = make_response({{1.0, -5}, {1.2, -5}, {1.4, -5}, {1.6, -5}});
    ResonanceReport rep = resonances(r);
    CHECK(rep.resonances.empty());
    CHECK_FALSE(rep.best.has_value());
}

TEST_CASE("double-dip curve reports both resonances with disjoint bands") {
    FrequencyResponse r = make_response({{1.10, -4},
                                         {1.14, -11},
                                         {1.17, -22},
                                         {1.20, -12},
                                         {1.21, -12},
                                         {1.25, -25},
                                         {1.28, -11},
                                         {1.32, -4}});
    ResonanceReport rep = resonances(r);
    REQUIRE(rep.resonances.size() == 2);
    CHECK(rep.resonances[0].frequency_hz == doctest::Approx(1.17e9).epsilon(0.02));
    CHECK(rep.resonances[1].frequency_hz == doctest::Approx(1.25e9).epsilon(0.02));
    CHECK(rep.resonances[0].f_hi_hz <= rep.resonances[1].f_lo_hz + 1.0);
    REQUIRE(rep.best.has_value());
    CHECK(*rep.best == 1);  // deeper dip
}

TEST_CASE("band exiting the sweep is flagged truncated") {
    FrequencyResponse r =
        make_response({{1.0, -12}, {1.1, -15}, {1.2, -20}, {1.3, -14}, {1.4, -8}});
    ResonanceReport rep = resonances(r);
    REQUIRE(rep.resonances.size() == 1);
    CHECK(rep.resonances[0].bandwidth_truncated);
    CHECK(rep.resonances[0].f_lo_hz == doctest::Approx(1.0e9));
}

TEST_CASE("response validation") {
    FrequencyResponse two = make_response({{1.0, -5}, {1.1, -5}});
    CHECK_THROWS_AS(two.validate(), std::invalid_argument);
    FrequencyResponse bad = make_response({{1.0, -5}, {1.2, -5}, {1.1, -5}});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

namespace {

// Synthetic pattern on a regular grid with prescribed fields; p_in chosen so
// the gain formula is exercised with real numbers.
FarFieldPattern synthetic_pattern(int nt, int np) {
    FarFieldGrid g = FarFieldGrid::regular(nt, np);
    FarFieldPattern p;
    p.theta_rad = g.theta_rad;
    p.phi_rad = g.phi_rad;
    p.frequency_hz = 1.3e9;
    p.p_in_w = 1.0;
    const std::size_t n = p.theta_rad.size() * p.phi_rad.size();
    p.e_theta.resize(n);
    p.e_phi.resize(n);
    p.gain_dbi.resize(n);
    for (std::size_t it = 0; it < p.theta_rad.size(); ++it)
        for (std::size_t ip = 0; ip < p.phi_rad.size(); ++ip) {
            const std::size_t k = p.idx(it, ip);
            p.e_theta[k] = cplx(std::sin(p.theta_rad[it]), 0.2 * std::cos(p.phi_rad[ip]));
            p.e_phi[k] = cplx(0.1, 0.3 * std::sin(p.theta_rad[it] + p.phi_rad[ip]));
            const double u = (std::norm(p.e_theta[k]) + std::norm(p.e_phi[k])) / (2.0 * kEta0);
            p.gain_dbi[k] = 10.0 * std::log10(std::max(4.0 * kPi * u / p.p_in_w, 1e-30));
        }
    return p;
}

}  // namespace

TEST_CASE("co/cross split closes power pointwise") {
    FarFieldPattern p = synthetic_pattern(19, 8);
    CoCross cc = co_cross_split(p);
    REQUIRE(cc.co_db.size() == p.gain_dbi.size());
    for (std::size_t k = 0; k < p.gain_dbi.size(); ++k) {
        const double total = std::pow(10.0, p.gain_dbi[k] / 10.0);
        const double parts =
            std::pow(10.0, cc.co_db[k] / 10.0) + std::pow(10.0, cc.cross_db[k] / 10.0);
        // The -80 dB floor contributes up to 2e-8 of linear gain per component.
        CHECK(std::fabs(parts - total) <= 1e-9 * total + 2.1e-8);
    }
}

TEST_CASE("pure theta-polarized field has floored cross-pol on its meridian") {
    FarFieldPattern p = synthetic_pattern(19, 8);
    for (auto& e : p.e_phi) e = 0.0;
    for (std::size_t it = 0; it < p.theta_rad.size(); ++it)
        for (std::size_t ip = 0; ip < p.phi_rad.size(); ++ip) {
            const std::size_t k = p.idx(it, ip);
            const double u = std::norm(p.e_theta[k]) / (2.0 * kEta0);
            p.gain_dbi[k] = 10.0 * std::log10(std::max(4.0 * kPi * u, 1e-30));
        }
    CoCross cc = co_cross_split(p, 0.0);
    // On the phi = 0 meridian Ludwig-3 co aligns with theta-hat exactly.
    for (std::size_t it = 0; it < p.theta_rad.size(); ++it) {
        const std::size_t k = p.idx(it, 0);
        if (p.gain_dbi[k] > -40.0) CHECK(cc.cross_db[k] == doctest::Approx(kGainFloorDb));
    }
}

TEST_CASE("isotropic pattern: peak gain 0 dBi, normalization 1") {
    FarFieldGrid g = FarFieldGrid::regular(37, 24);
    FarFieldPattern p;
    p.theta_rad = g.theta_rad;
    p.phi_rad = g.phi_rad;
    p.frequency_hz = 1.3e9;
    p.p_in_w = 1.0;
    p.p_rad_w = 1.0;
    const std::size_t n = p.theta_rad.size() * p.phi_rad.size();
    const double e_iso = std::sqrt(2.0 * kEta0 / (4.0 * kPi));  // unit directivity
    p.e_theta.assign(n, cplx(e_iso, 0.0));
    p.e_phi.assign(n, cplx(0.0, 0.0));
    p.gain_dbi.assign(n, 0.0);
    CHECK(peak_gain(p) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(directivity_normalization(p) == doctest::Approx(1.0).epsilon(0.001));
}

TEST_CASE("pattern cuts: shapes, normalization and errors") {
    FarFieldPattern p = synthetic_pattern(19, 8);

    auto e_cut = pattern_cut(p, CutPlane::E);
    REQUIRE(!e_cut.empty());
    double peak = -1e9;
    for (const auto& s : e_cut) {
        CHECK(s.angle_rad >= 0.0);
        CHECK(s.angle_rad < 2.0 * kPi + 1e-12);
        peak = std::max(peak, s.gain_dbi);
    }
    for (const auto& s : e_cut)
        CHECK(s.normalized_db == doctest::Approx(s.gain_dbi - peak).epsilon(1e-12));

    auto h_cut = pattern_cut(p, CutPlane::H);
    REQUIRE(h_cut.size() == p.phi_rad.size());
    // theta = 90 deg is on the 19-point grid (index 9): values must match
    for (std::size_t ip = 0; ip < p.phi_rad.size(); ++ip)
        CHECK(h_cut[ip].gain_dbi == doctest::Approx(p.gain_dbi[p.idx(9, ip)]));

    // A grid that misses the equator cannot produce an H cut.
    FarFieldPattern coarse = synthetic_pattern(18, 8);
    CHECK_THROWS_AS(pattern_cut(coarse, CutPlane::H), std::invalid_argument);
}
