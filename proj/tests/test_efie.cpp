#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "analytic.hpp"
#include "constants.hpp"
#include "efie.hpp"
#include "fom.hpp"
#include "geometry.hpp"
#include "rwg.hpp"

using namespace gpb;
using cplx = std::complex<double>;

namespace {

// ---- induced-EMF oracle for a thin center-fed dipole (test-only) ----

double simpson(double (*f)(double), double a, double b, int n) {
    double acc = f(a) + f(b);
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double sinc_t(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }
double one_minus_cos_over_t(double t) { return t == 0.0 ? 0.0 : (1.0 - std::cos(t)) / t; }

double si_fn(double x) { return simpson(&sinc_t, 0.0, x, 2000); }
double ci_fn(double x) {
    const double gamma = 0.5772156649015329;
    return gamma + std::log(x) - simpson(&one_minus_cos_over_t, 0.0, x, 2000);
}

cplx emf_dipole_impedance(double length_m, double radius_m, double lambda_m) {
    const double k = 2.0 * kPi / lambda_m;
    const double kl = k * length_m;
    const double gamma = 0.5772156649015329;
    const double eta = kEta0;
    const double r =
        eta / (2.0 * kPi) *
        (gamma + std::log(kl) - ci_fn(kl) +
         0.5 * std::sin(kl) * (si_fn(2.0 * kl) - 2.0 * si_fn(kl)) +
         0.5 * std::cos(kl) * (gamma + std::log(kl / 2.0) + ci_fn(2.0 * kl) - 2.0 * ci_fn(kl)));
    const double x =
        eta / (4.0 * kPi) *
        (2.0 * si_fn(kl) + std::cos(kl) * (2.0 * si_fn(kl) - si_fn(2.0 * kl)) -
         std::sin(kl) * (2.0 * ci_fn(kl) - ci_fn(2.0 * kl) -
                         ci_fn(2.0 * k * radius_m * radius_m / length_m)));
    return {r, x};
}

const MediumParams kMedium = MediumParams::free_space(kDesignFrequencyHz);
const double kLambdaMm = kDesignWavelengthMm;

void solve_dipole(double seg_mm, double& zin_re, double& zin_im) {
    TriMesh m = make_tube_dipole(kLambdaMm / 2.0, 0.001 * kLambdaMm, seg_mm);
    RwgBasisSet basis = build_basis(m);
    SystemMatrix sys = assemble(basis, kMedium);
    CurrentSolution sol = solve(sys, basis, Excitation{});
    zin_re = sol.zin.real();
    zin_im = sol.zin.imag();
}

}  // namespace

TEST_CASE("oracle sanity: induced-EMF half-wave dipole impedance") {
    const cplx z = emf_dipole_impedance(0.5, 0.001, 1.0);
    CHECK(z.real() == doctest::Approx(73.1).epsilon(0.01));
    CHECK(z.imag() == doctest::Approx(42.5).epsilon(0.01));
}

TEST_CASE("basis counts: closed, open and masked meshes") {
    const CoaxModel coax;
    TriMesh sphere = generate(SphereSpec{}, coax, 12.0);
    RwgBasisSet bs = build_basis(sphere);
    CHECK(bs.size() == 3 * sphere.triangles.size() / 2);

    GenerateOptions opt;
    opt.include_element = false;
    TriMesh plate = generate(PlanarSpec{}, coax, 12.0, opt);
    RwgBasisSet bp = build_basis(plate);
    // Interior edges only: 3F/2 would double-count the open boundary.
    CHECK(bp.size() < 3 * plate.triangles.size() / 2);

    TriMesh slotted = generate(SlottedSphereSpec{}, coax, 12.0);
    TriMesh standard = generate(SphereSpec{}, coax, 12.0);
    // Masked triangles contribute no bases.
    std::size_t masked = 0;
    for (auto t : slotted.tags)
        if (t == RegionTag::Masked) ++masked;
    CHECK(masked > 0);
    CHECK(build_basis(slotted).size() < 3 * slotted.triangles.size() / 2);
}

TEST_CASE("system matrix is complex-symmetric and deterministic") {
    TriMesh m = make_tube_dipole(kLambdaMm / 2.0, 0.001 * kLambdaMm, 8.0);
    RwgBasisSet basis = build_basis(m);
    SystemMatrix a = assemble(basis, kMedium);
    double zmax = 0.0, dmax = 0.0;
    for (int r = 0; r < a.n; ++r)
        for (int c = 0; c < a.n; ++c) {
            zmax = std::max(zmax, std::abs(a.at(r, c)));
            dmax = std::max(dmax, std::abs(a.at(r, c) - a.at(c, r)));
        }
    CHECK(dmax / zmax < 1e-6);

    SystemMatrix b = assemble(basis, kMedium);
    CHECK(a.z == b.z);  // bit-identical under the fixed reduction order
}

TEST_CASE("half-wave dipole fixture vs the induced-EMF oracle") {
    double re, im;
    solve_dipole(1.5, re, im);
    const cplx oracle = emf_dipole_impedance(kLambdaMm / 2.0 * 1e-3, 0.001 * kLambdaMm * 1e-3,
                                             kMedium.wavelength_m);
    CAPTURE(re);
    CAPTURE(im);
    // Reactance agrees with the oracle. The resistance of a converged
    // full-wave solution for a 0.001-lambda-radius tube at exactly L =
    // lambda/2 sits ~19% above the sinusoidal-current value (87 vs 73 ohm);
    // the offset is finite-radius physics, not discretization (it is stable
    // to <0.5% under segment/quadrature refinement).
    CHECK(std::fabs(im - oracle.imag()) < 15.0);
    CHECK(re > oracle.real());
    CHECK(re == doctest::Approx(87.0).epsilon(0.05));

    // Thin-wire limit: shrinking the radius pulls the resistance toward the
    // oracle monotonically.
    double prev = re;
    for (double a_lam : {0.0005, 0.0002}) {
        TriMesh m = make_tube_dipole(kLambdaMm / 2.0, a_lam * kLambdaMm, 1.5);
        RwgBasisSet basis = build_basis(m);
        SystemMatrix sys = assemble(basis, kMedium);
        CurrentSolution sol = solve(sys, basis, Excitation{});
        CHECK(sol.zin.real() < prev);
        CHECK(sol.zin.real() > oracle.real());
        prev = sol.zin.real();
    }
    CHECK(prev < 82.0);  // a = 0.0002 lambda: within ~12% of the oracle
}

TEST_CASE("dipole Zin converges between coarse and fine meshes") {
    double re1, im1, re2, im2;
    solve_dipole(kLambdaMm / 10.0, re1, im1);
    solve_dipole(kLambdaMm / 20.0, re2, im2);
    const double drift = std::abs(cplx(re2 - re1, im2 - im1)) / std::abs(cplx(re2, im2));
    CAPTURE(re1);
    CAPTURE(im1);
    CAPTURE(re2);
    CAPTURE(im2);
    CHECK(drift < 0.03);
}

TEST_CASE("solver linearity: doubling V doubles currents, Zin fixed") {
    TriMesh m = make_tube_dipole(kLambdaMm / 2.0, 0.001 * kLambdaMm, 5.0);
    RwgBasisSet basis = build_basis(m);
    SystemMatrix sys = assemble(basis, kMedium);
    Excitation e1;
    CurrentSolution s1 = solve(sys, basis, e1);
    Excitation e2;
    e2.voltage = 2.0;
    CurrentSolution s2 = solve(sys, basis, e2);
    CHECK(std::abs(s2.zin - s1.zin) < 1e-9 * std::abs(s1.zin));
    for (std::size_t i = 0; i < s1.coeffs.size(); ++i)
        CHECK(std::abs(s2.coeffs[i] - 2.0 * s1.coeffs[i]) <= 1e-9 * std::abs(s1.coeffs[i]) + 1e-30);
    auto j1 = surface_current_map(s1);
    auto j2 = surface_current_map(s2);
    for (std::size_t t = 0; t < j1.size(); ++t)
        CHECK(j2[t] == doctest::Approx(2.0 * j1[t]).epsilon(1e-9));
}

TEST_CASE("image-ground quarter-wave monopole: impedance and pattern") {
    TriMesh m = make_image_monopole(kLambdaMm / 4.0, 0.001 * kLambdaMm, 1.5);
    CurrentSolution sol = solve_image_ground(m, kMedium, Excitation{});
    CAPTURE(sol.zin.real());
    CAPTURE(sol.zin.imag());

    // Half the dipole fixture impedance, within 10%.
    double dre, dim;
    solve_dipole(1.5, dre, dim);
    CHECK(sol.zin.real() == doctest::Approx(dre / 2.0).epsilon(0.10));
    CHECK(std::fabs(sol.zin.imag() - dim / 2.0) < 8.0);

    FarFieldGrid grid = FarFieldGrid::regular(91, 8);
    FarFieldPattern pat = far_field(sol, kMedium, grid);

    // Zero field below the horizon.
    for (std::size_t it = 0; it < grid.theta_rad.size(); ++it)
        if (grid.theta_rad[it] > kPi / 2.0 + 1e-9)
            for (std::size_t ip = 0; ip < grid.phi_rad.size(); ++ip)
                CHECK(pat.gain_dbi[pat.idx(it, ip)] == kGainFloorDb);

    // Peak gain 5.16 +- 0.3 dBi at the horizon.
    const double peak = peak_gain(pat);
    CHECK(peak == doctest::Approx(5.16).epsilon(0.06));

    // E-plane shape vs the sinusoidal-current reference
    // F(theta) = cos(pi/2 cos(theta)) / sin(theta), the physically correct
    // oracle for the resonant element. (The constant-current closed form
    // diverges from it by several dB below ~55 deg.)
    double peak0 = -1e9;
    for (std::size_t k = 0; k < grid.theta_rad.size(); ++k)
        peak0 = std::max(peak0, pat.gain_dbi[pat.idx(k, 0)]);
    for (int d = 10; d <= 90; d += 5) {
        const double th = d * kPi / 180.0;
        const double ref_db =
            20.0 * std::log10(std::cos(kPi / 2.0 * std::cos(th)) / std::sin(th));
        double best = 1e9, gdb = 0.0;
        for (std::size_t k = 0; k < grid.theta_rad.size(); ++k) {
            const double dd = std::fabs(grid.theta_rad[k] - th);
            if (dd < best) {
                best = dd;
                gdb = pat.gain_dbi[pat.idx(k, 0)];
            }
        }
        CHECK(std::fabs((gdb - peak0) - ref_db) < 1.0);
    }

    // Power balance within 5%.
    CHECK(pat.p_rad_w == doctest::Approx(pat.p_in_w).epsilon(0.05));
    // Directivity normalization on an upper-hemisphere grid (the pattern is
    // discontinuous at the horizon, so a full-sphere trapezoid would smear it).
    FarFieldGrid hemi;
    for (int i = 0; i <= 45; ++i) hemi.theta_rad.push_back(kPi / 2.0 * i / 45);
    for (int j = 0; j < 24; ++j) hemi.phi_rad.push_back(2.0 * kPi * j / 24);
    FarFieldPattern fine = far_field(sol, kMedium, hemi);
    CHECK(directivity_normalization(fine) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("image mode rejects geometry crossing the ground plane") {
    TriMesh m = make_tube_dipole(50.0, 0.5, 5.0);  // centered on the origin
    CHECK_THROWS_AS(solve_image_ground(m, kMedium, Excitation{}), std::invalid_argument);
}

TEST_CASE("dipole power balance and gain") {
    TriMesh m = make_tube_dipole(kLambdaMm / 2.0, 0.001 * kLambdaMm, 1.5);
    RwgBasisSet basis = build_basis(m);
    SystemMatrix sys = assemble(basis, kMedium);
    CurrentSolution sol = solve(sys, basis, Excitation{});
    FarFieldPattern pat = far_field(sol, kMedium, FarFieldGrid::regular(61, 16));
    CHECK(pat.p_rad_w == doctest::Approx(pat.p_in_w).epsilon(0.05));
    CHECK(peak_gain(pat) == doctest::Approx(2.15).epsilon(0.10));
    CHECK(directivity_normalization(pat) == doctest::Approx(1.0).epsilon(0.02));
}
