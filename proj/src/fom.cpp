#include "fom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

namespace {

using cplx = std::complex<double>;

double clamp_db(double db, double floor_db) {
    return std::isfinite(db) ? std::max(db, floor_db) : floor_db;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            const double dp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
        }
        const double dp = n * (t * p0 - p1) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

struct CurrentSamples {
    std::vector<Vec3> points;    // meters
    std::vector<double> weights; // include triangle area
    struct CJ {
        cplx x{}, y{}, z{};
    };
    std::vector<CJ> j;
};

CurrentSamples sample_currents(const CurrentSolution& sol) {
    const RwgBasisSet& basis = *sol.basis;
    const TriMesh& mesh = *basis.mesh;
    // 3-point (degree 2) rule per triangle.
    static const double bary[3][3] = {
        {2.0 / 3, 1.0 / 6, 1.0 / 6}, {1.0 / 6, 2.0 / 3, 1.0 / 6}, {1.0 / 6, 1.0 / 6, 2.0 / 3}};

    std::vector<int> tri_of_point;
    CurrentSamples s;
    std::vector<int> first_point(mesh.triangles.size(), -1);
    std::vector<double> area_m2(mesh.triangles.size(), 0.0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const RwgBasis& rb = basis.bases[b];
        for (int side = 0; side < (rb.half ? 1 : 2); ++side) {
            const int t = side == 0 ? rb.tri_plus : rb.tri_minus;
            if (first_point[t] >= 0) continue;
            first_point[t] = static_cast<int>(s.points.size());
            const auto& tr = mesh.triangles[t];
            area_m2[t] = mesh.triangle_area(t) * 1e-6;
            for (int q = 0; q < 3; ++q) {
                Vec3 p = (mesh.vertices[tr[0]] * bary[q][0] + mesh.vertices[tr[1]] * bary[q][1] +
                          mesh.vertices[tr[2]] * bary[q][2]) *
                         1e-3;
                s.points.push_back(p);
                s.weights.push_back(area_m2[t] / 3.0);
                s.j.push_back({});
            }
        }
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const RwgBasis& rb = basis.bases[b];
        const cplx c = sol.coeffs[b];
        auto add = [&](int t, int vfree, double sign) {
            const Vec3 vf = mesh.vertices[vfree] * 1e-3;
            const double scale = sign * rb.length_m / (2.0 * area_m2[t]);
            for (int q = 0; q < 3; ++q) {
                const int p = first_point[t] + q;
                const Vec3 d = (s.points[p] - vf) * scale;
                s.j[p].x += c * d.x;
                s.j[p].y += c * d.y;
                s.j[p].z += c * d.z;
            }
        };
        add(rb.tri_plus, rb.free_plus, 1.0);
        if (!rb.half) add(rb.tri_minus, rb.free_minus, -1.0);
    }
    return s;
}

// E_theta, E_phi in one far-field direction (r = 1 m, phase dropped).
void direction_fields(const CurrentSamples& cs, double k, double omega_mu, bool image,
                      double theta, double phi, cplx& e_theta, cplx& e_phi) {
    e_theta = e_phi = 0.0;
    if (image && theta > kPi / 2.0 + 1e-12) return;
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    const Vec3 rhat{st * cp, st * sp, ct};
    const Vec3 that{ct * cp, ct * sp, -st};
    const Vec3 phat{-sp, cp, 0.0};
    cplx nt = 0.0, np = 0.0;
    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        const auto& j = cs.j[i];
        {
            const cplx ph = cs.weights[i] * std::exp(cplx(0.0, k * rhat.dot(cs.points[i])));
            nt += ph * (j.x * that.x + j.y * that.y + j.z * that.z);
            np += ph * (j.x * phat.x + j.y * phat.y + j.z * phat.z);
        }
        if (image) {
            Vec3 pm = cs.points[i];
            pm.z = -pm.z;
            const cplx ph = cs.weights[i] * std::exp(cplx(0.0, k * rhat.dot(pm)));
            // Image current: (-Jx, -Jy, +Jz).
            nt += ph * (-j.x * that.x - j.y * that.y + j.z * that.z);
            np += ph * (-j.x * phat.x - j.y * phat.y + j.z * phat.z);
        }
    }
    const cplx jfac(0.0, -omega_mu / (4.0 * kPi));
    e_theta = jfac * nt;
    e_phi = jfac * np;
}

}  // namespace

double s11_db(cplx zin_ohm, double z0_ohm) {
    if (!(z0_ohm > 0.0)) throw std::domain_error("s11_db: Z0 must be positive");
    if (zin_ohm.real() <= -z0_ohm)
        throw std::domain_error("s11_db: Re(Zin) <= -Z0 is non-physical here");
    const double mag = std::abs((zin_ohm - z0_ohm) / (zin_ohm + z0_ohm));
    if (mag <= 0.0) return -100.0;
    return std::max(20.0 * std::log10(mag), -100.0);
}

void FrequencyResponse::validate() const {
    if (samples.size() < 3)
        throw std::invalid_argument("FrequencyResponse: need at least 3 samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].frequency_hz > samples[i - 1].frequency_hz))
            throw std::invalid_argument("FrequencyResponse: frequencies must strictly increase");
}

ResonanceReport resonances(const FrequencyResponse& response) {
    response.validate();
    const auto& s = response.samples;
    const double thresh = -10.0;
    ResonanceReport rep;

    std::vector<std::size_t> minima;
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (s[i].s11_db < thresh && s[i].s11_db < s[i - 1].s11_db &&
            s[i].s11_db <= s[i + 1].s11_db)
            minima.push_back(i);

    for (std::size_t mi = 0; mi < minima.size(); ++mi) {
        const std::size_t i = minima[mi];
        Resonance r;
        // Parabola through the three neighbors (general spacing).
        {
            const double x0 = s[i - 1].frequency_hz, x1 = s[i].frequency_hz,
                         x2 = s[i + 1].frequency_hz;
            const double y0 = s[i - 1].s11_db, y1 = s[i].s11_db, y2 = s[i + 1].s11_db;
            const double d0 = (y1 - y0) / (x1 - x0);
            const double d1 = (y2 - y1) / (x2 - x1);
            const double a = (d1 - d0) / (x2 - x0);
            double fv = x1;
            double sv = y1;
            if (a > 1e-30) {
                fv = std::clamp(0.5 * (x0 + x1 - d0 / a), x0, x2);
                // Evaluate the parabola at the vertex.
                sv = y0 + d0 * (fv - x0) + a * (fv - x0) * (fv - x1);
            }
            r.frequency_hz = fv;
            r.s11_db = sv;
        }
        // Interpolate Zin at the refined frequency.
        {
            std::size_t lo = i;
            if (r.frequency_hz < s[i].frequency_hz) lo = i - 1;
            const auto& a = s[lo];
            const auto& b = s[lo + 1];
            const double t = (r.frequency_hz - a.frequency_hz) /
                             (b.frequency_hz - a.frequency_hz);
            r.zin_ohm = a.zin_ohm + t * (b.zin_ohm - a.zin_ohm);
        }
        // -10 dB interval, split at inter-minimum maxima so intervals of
        // distinct resonances never overlap.
        std::size_t lo = i, hi = i;
        const std::size_t left_limit =
            (mi > 0) ? std::max_element(s.begin() + minima[mi - 1], s.begin() + i,
                                        [](const ResponseSample& a, const ResponseSample& b) {
                                            return a.s11_db < b.s11_db;
                                        }) -
                           s.begin()
                     : 0;
        const std::size_t right_limit =
            (mi + 1 < minima.size())
                ? std::max_element(s.begin() + i, s.begin() + minima[mi + 1],
                                   [](const ResponseSample& a, const ResponseSample& b) {
                                       return a.s11_db < b.s11_db;
                                   }) -
                      s.begin()
                : s.size() - 1;
        while (lo > left_limit && s[lo - 1].s11_db < thresh) --lo;
        while (hi < right_limit && s[hi + 1].s11_db < thresh) ++hi;
        if (lo > 0 && s[lo - 1].s11_db >= thresh) {
            const double t = (thresh - s[lo - 1].s11_db) / (s[lo].s11_db - s[lo - 1].s11_db);
            r.f_lo_hz = s[lo - 1].frequency_hz +
                        t * (s[lo].frequency_hz - s[lo - 1].frequency_hz);
        } else {
            r.f_lo_hz = s[lo].frequency_hz;  // band edge or split with the previous dip
            if (lo == 0) r.bandwidth_truncated = true;
        }
        if (hi + 1 < s.size() && s[hi + 1].s11_db >= thresh) {
            const double t = (thresh - s[hi].s11_db) / (s[hi + 1].s11_db - s[hi].s11_db);
            r.f_hi_hz = s[hi].frequency_hz +
                        t * (s[hi + 1].frequency_hz - s[hi].frequency_hz);
        } else {
            r.f_hi_hz = s[hi].frequency_hz;
            if (hi + 1 == s.size()) r.bandwidth_truncated = true;
        }
        r.bandwidth_pct = (r.f_hi_hz - r.f_lo_hz) / r.frequency_hz * 100.0;
        rep.resonances.push_back(r);
    }
    if (!rep.resonances.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < rep.resonances.size(); ++i)
            if (rep.resonances[i].s11_db < rep.resonances[best].s11_db) best = i;
        rep.best = best;
    }
    return rep;
}

FarFieldGrid FarFieldGrid::regular(int n_theta, int n_phi) {
    FarFieldGrid g;
    for (int i = 0; i < n_theta; ++i) g.theta_rad.push_back(kPi * i / (n_theta - 1));
    for (int j = 0; j < n_phi; ++j) g.phi_rad.push_back(2.0 * kPi * j / n_phi);
    return g;
}

FarFieldPattern far_field(const CurrentSolution& solution, const MediumParams& medium,
                          const FarFieldGrid& grid, double co_pol_phi0_rad) {
    medium.validate();
    if (grid.theta_rad.empty() || grid.phi_rad.empty())
        throw std::invalid_argument("far_field: empty grid");
    if (std::fabs(medium.frequency_hz - solution.frequency_hz) >
        1e-6 * solution.frequency_hz)
        throw std::invalid_argument("far_field: medium/solution frequency mismatch");

    const CurrentSamples cs = sample_currents(solution);
    const double k = medium.wavenumber;
    const double omega_mu = 2.0 * kPi * medium.frequency_hz * medium.mu_hpm;

    FarFieldPattern pat;
    pat.theta_rad = grid.theta_rad;
    pat.phi_rad = grid.phi_rad;
    pat.frequency_hz = solution.frequency_hz;
    pat.p_in_w = 0.5 * (solution.voltage * std::conj(solution.i_feed)).real();
    if (!(pat.p_in_w > 0.0))
        throw std::runtime_error("far_field: non-positive input power");

    const std::size_t nt = grid.theta_rad.size(), np = grid.phi_rad.size();
    pat.e_theta.resize(nt * np);
    pat.e_phi.resize(nt * np);
    pat.gain_dbi.resize(nt * np);
    for (std::size_t it = 0; it < nt; ++it) {
        for (std::size_t ip = 0; ip < np; ++ip) {
            cplx et, ep;
            direction_fields(cs, k, omega_mu, solution.image_ground, grid.theta_rad[it],
                             grid.phi_rad[ip], et, ep);
            const std::size_t id = pat.idx(it, ip);
            pat.e_theta[id] = et;
            pat.e_phi[id] = ep;
            const double u = (std::norm(et) + std::norm(ep)) / (2.0 * medium.eta_ohm);
            pat.gain_dbi[id] =
                clamp_db(10.0 * std::log10(4.0 * kPi * u / pat.p_in_w), kGainFloorDb);
        }
    }

    // Radiated power on an internal Gauss-Legendre x uniform-phi rule.
    {
        std::vector<double> gx, gw;
        gauss_legendre(32, gx, gw);
        const int nphi = 64;
        double p = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double theta = std::acos(gx[i]);
            for (int j = 0; j < nphi; ++j) {
                const double phi = 2.0 * kPi * j / nphi;
                cplx et, ep;
                direction_fields(cs, k, omega_mu, solution.image_ground, theta, phi, et, ep);
                p += gw[i] * (2.0 * kPi / nphi) * (std::norm(et) + std::norm(ep)) /
                     (2.0 * medium.eta_ohm);
            }
        }
        pat.p_rad_w = p;
    }

    const CoCross cc = co_cross_split(pat, co_pol_phi0_rad);
    pat.co_db = cc.co_db;
    pat.cross_db = cc.cross_db;
    return pat;
}

CoCross co_cross_split(const FarFieldPattern& pattern, double phi0_rad) {
    CoCross cc;
    const std::size_t nt = pattern.theta_rad.size(), np = pattern.phi_rad.size();
    cc.co_db.resize(nt * np);
    cc.cross_db.resize(nt * np);
    // Partial-gain scale so that co-power + cross-power = gain power.
    const double scale = 4.0 * kPi / (2.0 * kEta0 * pattern.p_in_w);
    for (std::size_t it = 0; it < nt; ++it) {
        for (std::size_t ip = 0; ip < np; ++ip) {
            const std::size_t id = pattern.idx(it, ip);
            const double dphi = pattern.phi_rad[ip] - phi0_rad;
            const double c = std::cos(dphi), s = std::sin(dphi);
            const cplx co = pattern.e_theta[id] * c - pattern.e_phi[id] * s;
            const cplx cx = pattern.e_theta[id] * s + pattern.e_phi[id] * c;
            cc.co_db[id] = clamp_db(10.0 * std::log10(std::norm(co) * scale), kGainFloorDb);
            cc.cross_db[id] = clamp_db(10.0 * std::log10(std::norm(cx) * scale), kGainFloorDb);
        }
    }
    return cc;
}

std::vector<CutSample> pattern_cut(const FarFieldPattern& pattern, CutPlane plane,
                                   double phi0_rad) {
    std::vector<CutSample> cut;
    auto phi_index = [&](double phi) -> int {
        const double target = std::fmod(std::fmod(phi, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
        for (std::size_t j = 0; j < pattern.phi_rad.size(); ++j)
            if (std::fabs(std::remainder(pattern.phi_rad[j] - target, 2.0 * kPi)) < 1e-9)
                return static_cast<int>(j);
        return -1;
    };
    if (plane == CutPlane::E) {
        const int j0 = phi_index(phi0_rad);
        const int j1 = phi_index(phi0_rad + kPi);
        if (j0 < 0 || j1 < 0)
            throw std::invalid_argument("pattern_cut: E-plane meridian not sampled");
        for (std::size_t it = 0; it < pattern.theta_rad.size(); ++it)
            cut.push_back({pattern.theta_rad[it], pattern.gain_dbi[pattern.idx(it, j0)], 0.0});
        for (std::size_t it = pattern.theta_rad.size(); it-- > 0;) {
            if (it == 0 || it + 1 == pattern.theta_rad.size()) continue;  // poles once
            cut.push_back({2.0 * kPi - pattern.theta_rad[it],
                           pattern.gain_dbi[pattern.idx(it, j1)], 0.0});
        }
    } else {
        int it90 = -1;
        for (std::size_t it = 0; it < pattern.theta_rad.size(); ++it)
            if (std::fabs(pattern.theta_rad[it] - kPi / 2.0) < 1e-9) it90 = static_cast<int>(it);
        if (it90 < 0) throw std::invalid_argument("pattern_cut: H-plane ring not sampled");
        for (std::size_t ip = 0; ip < pattern.phi_rad.size(); ++ip)
            cut.push_back({pattern.phi_rad[ip], pattern.gain_dbi[pattern.idx(it90, ip)], 0.0});
    }
    double peak = kGainFloorDb;
    for (const auto& c : cut) peak = std::max(peak, c.gain_dbi);
    for (auto& c : cut) c.normalized_db = std::max(c.gain_dbi - peak, kGainFloorDb);
    return cut;
}

double peak_gain(const FarFieldPattern& pattern) {
    double g = kGainFloorDb;
    for (double v : pattern.gain_dbi) g = std::max(g, v);
    return g;
}

double directivity_normalization(const FarFieldPattern& pattern) {
    // Trapezoid in theta (with sin factor), uniform phi, using the pattern's
    // own grid; D = 4 pi U / P_rad.
    const std::size_t nt = pattern.theta_rad.size(), np = pattern.phi_rad.size();
    if (nt < 2 || np < 1 || !(pattern.p_rad_w > 0.0))
        throw std::invalid_argument("directivity_normalization: unusable pattern");
    double acc = 0.0;
    const double dphi = 2.0 * kPi / np;
    for (std::size_t it = 0; it < nt; ++it) {
        double dth;
        if (it == 0)
            dth = 0.5 * (pattern.theta_rad[1] - pattern.theta_rad[0]);
        else if (it + 1 == nt)
            dth = 0.5 * (pattern.theta_rad[nt - 1] - pattern.theta_rad[nt - 2]);
        else
            dth = 0.5 * (pattern.theta_rad[it + 1] - pattern.theta_rad[it - 1]);
        for (std::size_t ip = 0; ip < np; ++ip) {
            const std::size_t id = pattern.idx(it, ip);
            const double u = (std::norm(pattern.e_theta[id]) + std::norm(pattern.e_phi[id])) /
                             (2.0 * kEta0);
            acc += (u / pattern.p_rad_w) * std::sin(pattern.theta_rad[it]) * dth * dphi;
        }
    }
    return acc;  // equals 1 when D integrates to 4 pi
}

}  // namespace gpb
