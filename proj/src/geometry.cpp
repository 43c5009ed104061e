#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

namespace {

constexpr double kTau = 2.0 * kPi;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("geometry: " + what);
}

struct Builder {
    TriMesh mesh;

    int vertex(const Vec3& p) {
        mesh.vertices.push_back(p);
        return static_cast<int>(mesh.vertices.size()) - 1;
    }
    void tri(int a, int b, int c, RegionTag tag, bool flip) {
        if (flip) std::swap(b, c);
        mesh.triangles.push_back({a, b, c});
        mesh.tags.push_back(tag);
    }
};

// A ring of already-created vertices ordered by ascending angle parameter.
struct Ring {
    std::vector<int> v;
    std::vector<double> ang;
    bool closed = true;
};

// Conforming triangle strip between two rings with arbitrary (and unequal)
// angle subdivisions: two-pointer merge by next-angle value.
void strip(Builder& b, const Ring& A, const Ring& B, RegionTag tag, bool flip) {
    const std::size_t na = A.v.size(), nb = B.v.size();
    if (na < 2 || nb < 2) throw std::logic_error("strip: rings too small");
    auto a_ang = [&](std::size_t k) {
        return k < na ? A.ang[k] : A.ang[k - na] + kTau;
    };
    auto b_ang = [&](std::size_t k) {
        return k < nb ? B.ang[k] : B.ang[k - nb] + kTau;
    };
    if (A.closed != B.closed) throw std::logic_error("strip: mixed ring closure");
    const std::size_t ia_end = A.closed ? na : na - 1;
    const std::size_t ib_end = B.closed ? nb : nb - 1;
    std::size_t i = 0, j = 0;
    while (i < ia_end || j < ib_end) {
        bool adv_a;
        if (i >= ia_end) adv_a = false;
        else if (j >= ib_end) adv_a = true;
        else adv_a = a_ang(i + 1) <= b_ang(j + 1);
        if (adv_a) {
            b.tri(A.v[i % na], A.v[(i + 1) % na], B.v[j % nb], tag, flip);
            ++i;
        } else {
            b.tri(B.v[(j + 1) % nb], B.v[j % nb], A.v[i % na], tag, flip);
            ++j;
        }
    }
}

void fan(Builder& b, const Ring& A, int apex, RegionTag tag, bool flip) {
    const std::size_t na = A.v.size();
    const std::size_t end = A.closed ? na : na - 1;
    for (std::size_t i = 0; i < end; ++i)
        b.tri(A.v[i], A.v[(i + 1) % na], apex, tag, flip);
}

int round_mult8(double n) {
    int m = static_cast<int>(std::lround(n / 8.0)) * 8;
    return std::max(8, m);
}

// Uniform closed angle list, phase 0.
std::vector<double> uniform_angles(int n) {
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = kTau * i / n;
    return a;
}

// Closed angle list containing all breakpoints, gaps subdivided to max_step.
std::vector<double> fill_closed(std::vector<double> breaks, double max_step) {
    for (double& x : breaks) x = std::fmod(std::fmod(x, kTau) + kTau, kTau);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
                 breaks.end());
    if (breaks.empty()) breaks.push_back(0.0);
    std::vector<double> out;
    const std::size_t n = breaks.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = breaks[k];
        const double hi = (k + 1 < n) ? breaks[k + 1] : breaks[0] + kTau;
        const int sub = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_step)));
        for (int s = 0; s < sub; ++s) out.push_back(lo + (hi - lo) * s / sub);
    }
    return out;
}

std::vector<double> fill_open(double lo, double hi, double max_step) {
    const int sub = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_step)));
    std::vector<double> out;
    for (int s = 0; s <= sub; ++s) out.push_back(lo + (hi - lo) * s / sub);
    return out;
}

template <typename PointFn>
Ring make_ring(Builder& b, const std::vector<double>& angles, bool closed, PointFn&& point) {
    Ring r;
    r.closed = closed;
    r.ang = angles;
    r.v.reserve(angles.size());
    for (double a : angles) r.v.push_back(b.vertex(point(a)));
    return r;
}

// ---------------------------------------------------------------------------
// Ground surfaces. Each returns its mesh contribution inside the builder and
// the mount-hole rim ring (ordered CCW about +z) the feed attaches to.
// ---------------------------------------------------------------------------

// Square plate in z = 0 with a central circular hole; normal +z. Rings morph
// from circles near the hole to the exact square at the boundary.
Ring plate_with_hole(Builder& b, double side, double hole_r, double edge) {
    const double half = side / 2.0;
    require(hole_r < 0.5 * half, "mount hole does not fit the plate");

    std::vector<double> radii{hole_r};
    double r = hole_r;
    while (true) {
        const double step = std::min(edge, std::max(0.55 * r, 0.7));
        if (r + step >= half - 0.45 * edge) break;
        r += step;
        radii.push_back(r);
    }
    radii.push_back(half);

    auto squareness = [&](double rr) {
        double t = (rr - 0.55 * half) / (0.45 * half);
        t = std::clamp(t, 0.0, 1.0);
        return t * t * (3.0 - 2.0 * t);
    };
    auto sq = [](double phi) {
        return 1.0 / std::max(std::fabs(std::cos(phi)), std::fabs(std::sin(phi)));
    };

    Ring prev;
    int prev_n = 8;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double rk = radii[k];
        const double t = squareness(rk);
        int n = round_mult8(kTau * rk * (1.0 + 0.2 * t) / edge);
        n = std::clamp(n, prev_n, 2 * prev_n);
        Ring ring = make_ring(b, uniform_angles(n), true, [&](double phi) {
            const double rho = rk * (1.0 - t + t * sq(phi));
            return Vec3{rho * std::cos(phi), rho * std::sin(phi), 0.0};
        });
        if (k == 0) {
            prev = ring;
        } else {
            strip(b, prev, ring, RegionTag::Metal, /*flip=*/true);
            prev = ring;
        }
        if (k == 0) continue;
        prev_n = n;
    }
    // The rim is the first ring created; rebuild its descriptor.
    Ring rim;
    rim.closed = true;
    rim.ang = uniform_angles(8);
    for (int i = 0; i < 8; ++i) rim.v.push_back(i);
    return rim;
}

struct MaskRegion {
    // Polar wedge on the sphere, angles measured from the mount axis.
    double alpha_lo = 0.0, alpha_hi = 0.0;
    double phi_center = 0.0, phi_half_width = kPi;  // full band when >= pi
};

// Sphere tangent to the mount plane at the origin, center (0,0,-R), meshed
// from the mount-hole rim down to the far pole. alpha breakpoints and
// azimuthal slot edges are honored exactly so mask tagging is conforming.
Ring sphere_shell(Builder& b, double R, double hole_r, double edge,
                  const std::vector<MaskRegion>& masks) {
    require(hole_r < R, "mount hole larger than sphere");
    const double alpha0 = std::asin(hole_r / R);
    const double pole_gap = std::max(edge / R, 0.02);
    const double alpha_end = kPi - pole_gap;
    const Vec3 center{0.0, 0.0, -R};

    std::vector<double> breaks{alpha0, alpha_end};
    for (const auto& m : masks) {
        require(m.alpha_lo > alpha0 && m.alpha_hi < alpha_end && m.alpha_lo < m.alpha_hi,
                "masked region falls outside the sphere surface");
        breaks.push_back(m.alpha_lo);
        breaks.push_back(m.alpha_hi);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double c) { return std::fabs(a - c) < 1e-9; }),
                 breaks.end());

    // Narrowest azimuthal wedge covering alpha; limits the alpha step so the
    // tall slot cells keep a healthy aspect ratio.
    auto wedge_dphi_min = [&](double alpha) {
        double d = 1e9;
        for (const auto& m : masks)
            if (m.phi_half_width < kPi && alpha > m.alpha_lo - 1e-9 &&
                alpha < m.alpha_hi + 1e-9)
                d = std::min(d, 2.0 * m.phi_half_width);
        return d;
    };

    std::vector<double> alphas{breaks.front()};
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double lo = breaks[k], hi = breaks[k + 1];
        const double dphi = wedge_dphi_min(0.5 * (lo + hi));
        double a = lo;
        while (a < hi - 1e-12) {
            double step = edge / R;
            if (dphi < 1e8) {
                const double s =
                    std::min(std::sin(a), std::sin(std::min(hi, a + step)));
                step = std::min(step, std::max(0.02, 9.0 * s * dphi));
            }
            if (a + 1.6 * step > hi) {
                const double rem = hi - a;
                if (rem > 1.2 * step) alphas.push_back(a + rem / 2.0);
                a = hi;
                alphas.push_back(hi);
            } else {
                a += step;
                alphas.push_back(a);
            }
        }
    }

    // Azimuthal wedge boundaries that must appear as mesh lines.
    auto wedge_breaks = [&](double alpha) {
        std::vector<double> out;
        for (const auto& m : masks) {
            if (m.phi_half_width >= kPi) continue;
            if (alpha >= m.alpha_lo - 1e-9 && alpha <= m.alpha_hi + 1e-9) {
                out.push_back(m.phi_center - m.phi_half_width);
                out.push_back(m.phi_center + m.phi_half_width);
            }
        }
        return out;
    };
    auto in_wedge_band = [&](double alpha) {
        for (const auto& m : masks)
            if (m.phi_half_width < kPi && alpha > m.alpha_lo - 1e-9 && alpha < m.alpha_hi + 1e-9)
                return true;
        return false;
    };

    auto point = [&](double alpha, double phi) {
        return center + Vec3{R * std::sin(alpha) * std::cos(phi),
                             R * std::sin(alpha) * std::sin(phi), R * std::cos(alpha)};
    };

    Ring rim;
    Ring prev;
    int prev_n = 8;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const double alpha = alphas[k];
        const double circ = kTau * R * std::sin(alpha);
        std::vector<double> angles;
        if (k == 0) {
            angles = uniform_angles(8);
        } else if (in_wedge_band(alpha) ||
                   (k + 1 < alphas.size() && in_wedge_band(0.5 * (alpha + alphas[k + 1]))) ||
                   in_wedge_band(0.5 * (alpha + alphas[k - 1]))) {
            // Shared conforming list across the slot band and its boundary rings.
            double smax = 0.0;
            std::vector<double> wb;
            for (const auto& m : masks) {
                if (m.phi_half_width >= kPi) continue;
                smax = std::max(smax, std::sin(std::clamp(kPi / 2, m.alpha_lo, m.alpha_hi)));
                smax = std::max(smax, std::max(std::sin(m.alpha_lo), std::sin(m.alpha_hi)));
                wb.push_back(m.phi_center - m.phi_half_width);
                wb.push_back(m.phi_center + m.phi_half_width);
            }
            angles = fill_closed(wb, edge / std::max(1e-6, R * smax));
        } else {
            int n = round_mult8(circ / edge);
            n = std::clamp(n, std::max(8, prev_n / 2), 2 * prev_n);
            angles = uniform_angles(n);
        }
        prev_n = static_cast<int>(angles.size());
        Ring ring = make_ring(b, angles, true, [&](double phi) { return point(alpha, phi); });
        if (k == 0) {
            rim = ring;
        } else {
            strip(b, prev, ring, RegionTag::Metal, /*flip=*/true);
        }
        prev = ring;
    }
    const int pole = b.vertex(point(kPi, 0.0));
    fan(b, prev, pole, RegionTag::Metal, /*flip=*/true);

    // Mask tagging by centroid (exact: region boundaries are mesh lines).
    for (std::size_t t = 0; t < b.mesh.triangles.size(); ++t) {
        const Vec3 c = b.mesh.triangle_centroid(t);
        const Vec3 d = (c - center) / R;
        const double alpha = std::acos(std::clamp(d.z, -1.0, 1.0));
        double phi = std::atan2(d.y, d.x);
        for (const auto& m : masks) {
            if (alpha <= m.alpha_lo || alpha >= m.alpha_hi) continue;
            if (m.phi_half_width >= kPi) {
                b.mesh.tags[t] = RegionTag::Masked;
                break;
            }
            double dphi = std::remainder(phi - m.phi_center, kTau);
            if (std::fabs(dphi) < m.phi_half_width) {
                b.mesh.tags[t] = RegionTag::Masked;
                break;
            }
        }
    }
    return rim;
}

// Open lathe surface of revolution about +z given a profile (rho(s), z(s)).
// Rings ordered along the profile; normal orientation set by `flip`.
template <typename ProfileFn>
void lathe(Builder& b, const std::vector<double>& params, ProfileFn&& prof, double edge,
           RegionTag tag, bool flip, int n_min = 8) {
    Ring prev;
    int prev_n = 0;
    for (std::size_t k = 0; k < params.size(); ++k) {
        auto [rho, z] = prof(params[k]);
        int n = round_mult8(kTau * rho / edge);
        n = std::max(n, n_min);
        if (prev_n > 0) n = std::clamp(n, std::max(n_min, prev_n / 2), 2 * prev_n);
        const double zz = z, rr = rho;
        Ring ring = make_ring(b, uniform_angles(n), true, [&](double phi) {
            return Vec3{rr * std::cos(phi), rr * std::sin(phi), zz};
        });
        if (k > 0) strip(b, prev, ring, tag, flip);
        prev = ring;
        prev_n = n;
    }
}

// Axis-aligned rectangular box open at the bottom (5 faces), resting at z0.
void open_box(Builder& b, const Vec3& center_xy, double lx, double ly, double lz, double z0,
              double edge) {
    auto grid = [&](Vec3 orig, Vec3 du, double lu, Vec3 dv, double lv, bool flip) {
        const int nu = std::max(1, static_cast<int>(std::ceil(lu / edge)));
        const int nv = std::max(1, static_cast<int>(std::ceil(lv / edge)));
        std::vector<int> idx((nu + 1) * (nv + 1));
        for (int j = 0; j <= nv; ++j)
            for (int i = 0; i <= nu; ++i)
                idx[j * (nu + 1) + i] =
                    b.vertex(orig + du * (lu * i / nu) + dv * (lv * j / nv));
        for (int j = 0; j < nv; ++j)
            for (int i = 0; i < nu; ++i) {
                int a = idx[j * (nu + 1) + i], c = idx[j * (nu + 1) + i + 1];
                int d = idx[(j + 1) * (nu + 1) + i], e = idx[(j + 1) * (nu + 1) + i + 1];
                b.tri(a, c, e, RegionTag::Metal, flip);
                b.tri(a, e, d, RegionTag::Metal, flip);
            }
    };
    const Vec3 o{center_xy.x - lx / 2, center_xy.y - ly / 2, z0};
    const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    grid(o + ez * lz, ex, lx, ey, ly, false);                      // top (+z)
    grid(o, ex, lx, ez, lz, true);                                 // -y side
    grid(o + ey * ly, ex, lx, ez, lz, false);                      // +y side
    grid(o, ey, ly, ez, lz, false);                                // -x side
    grid(o + ex * lx, ey, ly, ez, lz, true);                       // +x side
}

// ---------------------------------------------------------------------------

struct GenCtx {
    const CoaxModel& coax;
    double edge;
    const GenerateOptions& opt;
};

// Feed frustum from the ground mount-hole rim up to the element base ring,
// then the element tube and top cap. Records the delta-gap feed edges.
void attach_feed_and_element(Builder& b, const Ring& rim, const GenCtx& cx) {
    const double a_el = cx.coax.inner_mm / 2.0;
    const double gap = cx.coax.gap_mm;
    const double h = cx.coax.element_mm;

    // Recompute rim angles from actual positions (rim may be tilted).
    Ring rim_sorted = rim;
    {
        std::vector<std::size_t> order(rim.v.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::vector<double> ang(rim.v.size());
        for (std::size_t i = 0; i < rim.v.size(); ++i) {
            const Vec3& p = b.mesh.vertices[rim.v[i]];
            ang[i] = std::fmod(std::atan2(p.y, p.x) + kTau, kTau);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return ang[x] < ang[y];
        });
        rim_sorted.v.clear();
        rim_sorted.ang.clear();
        for (std::size_t i : order) {
            rim_sorted.v.push_back(rim.v[i]);
            rim_sorted.ang.push_back(ang[i]);
        }
    }

    const int facets = 8;
    Ring base = make_ring(b.mesh.vertices.empty() ? b : b, uniform_angles(facets), true,
                          [&](double phi) {
                              return Vec3{a_el * std::cos(phi), a_el * std::sin(phi), gap};
                          });
    strip(b, rim_sorted, base, RegionTag::FeedRing, /*flip=*/false);

    for (std::size_t i = 0; i < base.v.size(); ++i)
        b.mesh.feed_edges.push_back({base.v[i], base.v[(i + 1) % base.v.size()]});

    const double seg = std::min(3.0, cx.edge);
    const int nseg = std::max(2, static_cast<int>(std::ceil(h / seg)));
    Ring prev = base;
    for (int k = 1; k <= nseg; ++k) {
        const double z = gap + h * k / nseg;
        Ring ring = make_ring(b, uniform_angles(facets), true, [&](double phi) {
            return Vec3{a_el * std::cos(phi), a_el * std::sin(phi), z};
        });
        strip(b, prev, ring, RegionTag::Metal, /*flip=*/false);
        prev = ring;
    }
    const int apex = b.vertex(Vec3{0, 0, gap + h});
    fan(b, prev, apex, RegionTag::Metal, /*flip=*/false);
}

double hole_radius(const CoaxModel& coax) { return coax.outer_mm / 2.0; }

// --- per-family generators ---

Ring gen_planar(Builder& b, const PlanarSpec& s, const GenCtx& cx) {
    require(s.side_mm > 0, "geometry.side must be positive");
    return plate_with_hole(b, s.side_mm, hole_radius(cx.coax), cx.edge);
}

Ring gen_ribbed(Builder& b, const RibbedPlanarSpec& s, const GenCtx& cx) {
    require(s.side_mm > 0 && s.rib_height_mm > 0 && s.rib_width_mm > 0 && s.rib_count > 0,
            "ribbed planar dimensions must be positive");
    Ring rim = plate_with_hole(b, s.side_mm, hole_radius(cx.coax), cx.edge);
    const double standoff = 0.8;  // ribs rest on the plate; meshed bodies kept apart
    const double len = s.side_mm - 10.0;
    for (int i = 0; i < s.rib_count; ++i) {
        const double y = -s.side_mm / 2.0 + (i + 0.5) * s.side_mm / s.rib_count;
        require(std::fabs(y) > hole_radius(cx.coax) + s.rib_width_mm, "rib collides with mount");
        open_box(b, Vec3{0, y, 0}, len, s.rib_width_mm, s.rib_height_mm, standoff,
                 std::min(cx.edge, 6.0));
    }
    return rim;
}

Ring gen_planar_dish(Builder& b, const PlanarDishSpec& s, const GenCtx& cx) {
    require(s.cap_height_mm > 0 && s.cap_height_mm <= s.parent_radius_mm,
            "dish cap height must lie in (0, parent radius]");
    const double rrim = dish_true_radius_mm(s.parent_radius_mm, s.cap_height_mm);
    require(2.0 * rrim < s.side_mm, "dish rim wider than the plate");
    Ring rim = plate_with_hole(b, s.side_mm, hole_radius(cx.coax), cx.edge);
    const double standoff = 1.0;
    const double Rp = s.parent_radius_mm;
    const double rho0 = cx.coax.outer_mm / 2.0 + 1.0;
    std::vector<double> rhos = fill_open(rho0, rrim, std::max(2.0, cx.edge * 0.8));
    lathe(b, rhos, [&](double rho) {
        return std::pair<double, double>{rho, standoff + Rp - std::sqrt(Rp * Rp - rho * rho)};
    }, cx.edge, RegionTag::Metal, /*flip=*/true);
    return rim;
}

Ring gen_planar_horn(Builder& b, const PlanarHornSpec& s, const GenCtx& cx) {
    require(s.lower_length_mm > 0 && s.height_mm > 0 && s.flare > 1.0,
            "horn dimensions must be positive with flare > 1");
    require(s.flare * s.lower_length_mm < s.side_mm, "horn mouth wider than the plate");
    Ring rim = plate_with_hole(b, s.side_mm, hole_radius(cx.coax), cx.edge);
    const double standoff = 1.0;
    auto sq = [](double phi) {
        return 1.0 / std::max(std::fabs(std::cos(phi)), std::fabs(std::sin(phi)));
    };
    const int nz = std::max(2, static_cast<int>(std::ceil(s.height_mm / cx.edge)));
    Ring prev;
    for (int k = 0; k <= nz; ++k) {
        const double t = static_cast<double>(k) / nz;
        const double half = 0.5 * s.lower_length_mm * (1.0 + (s.flare - 1.0) * t);
        const double z = standoff + s.height_mm * t;
        const int n = std::max(8, round_mult8(8.0 * half / cx.edge) );
        std::vector<double> angs =
            fill_closed({kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4}, kTau / n);
        Ring ring = make_ring(b, angs, true, [&](double phi) {
            const double rho = half * sq(phi);
            return Vec3{rho * std::cos(phi), rho * std::sin(phi), z};
        });
        if (k > 0) strip(b, prev, ring, RegionTag::Metal, /*flip=*/false);
        prev = ring;
    }
    return rim;
}

Ring gen_planar_cone(Builder& b, const PlanarConeSpec& s, const GenCtx& cx) {
    require(s.cone_radius_mm > 0 && s.cone_height_mm > 0, "cone dimensions must be positive");
    require(2.0 * s.cone_radius_mm < s.side_mm, "cone wider than the plate");
    Ring rim = plate_with_hole(b, s.side_mm, hole_radius(cx.coax), cx.edge);
    const double standoff = 1.0;
    const double rho0 = cx.coax.outer_mm / 2.0 + 1.0;
    require(rho0 < s.cone_radius_mm, "cone radius too small for the feed clearance");
    std::vector<double> ts = fill_open(0.0, 1.0, cx.edge / std::hypot(s.cone_radius_mm - rho0,
                                                                      s.cone_height_mm));
    lathe(b, ts, [&](double t) {
        return std::pair<double, double>{rho0 + (s.cone_radius_mm - rho0) * t,
                                         standoff + s.cone_height_mm * t};
    }, cx.edge, RegionTag::Metal, /*flip=*/false);
    return rim;
}

Ring gen_sphere(Builder& b, const SphereSpec& s, const GenCtx& cx) {
    require(s.radius_mm > 0, "geometry.radius must be positive");
    return sphere_shell(b, s.radius_mm, hole_radius(cx.coax), cx.edge, {});
}

Ring gen_slotted(Builder& b, const SlottedSphereSpec& s, const GenCtx& cx) {
    require(s.radius_mm > 0 && s.slot_length_mm > 0 && s.slot_width_mm > 0 && s.slot_count > 0,
            "slotted sphere dimensions must be positive");
    const double R = s.radius_mm;
    const double alpha0 = std::asin(hole_radius(cx.coax) / R);
    const double a1 = alpha0 + 3.0 / R;  // slots start close to the element
    const double a2 = a1 + s.slot_length_mm / R;
    require(a2 < kPi - 0.15, "slot length too long for the sphere");
    const double dphi = s.slot_length_mm * s.slot_width_mm /
                        (R * R * (std::cos(a1) - std::cos(a2)));
    require(s.slot_count * dphi < 0.9 * kTau,
            "slots wider than the sphere circumference");
    std::vector<MaskRegion> masks;
    for (int i = 0; i < s.slot_count; ++i)
        masks.push_back({a1, a2, kTau * i / s.slot_count, dphi / 2.0});
    return sphere_shell(b, R, hole_radius(cx.coax), cx.edge, masks);
}

Ring gen_ringed(Builder& b, const RingedSphereSpec& s, const GenCtx& cx) {
    require(s.radius_mm > 0 && s.ring_spacing_mm > 0 && !s.ring_widths_mm.empty(),
            "ringed sphere dimensions must be positive");
    const double R = s.radius_mm;
    const double alpha0 = std::asin(hole_radius(cx.coax) / R);
    std::vector<MaskRegion> masks;
    double arc = R * alpha0 + s.ring_spacing_mm;
    for (double w : s.ring_widths_mm) {
        require(w > 0, "ring width must be positive");
        const double a_lo = arc / R, a_hi = (arc + w) / R;
        require(a_hi < kPi - 0.15, "rings extend past the sphere");
        masks.push_back({a_lo, a_hi, 0.0, kPi});
        arc += w + s.ring_spacing_mm;
    }
    return sphere_shell(b, R, hole_radius(cx.coax), cx.edge, masks);
}

Ring gen_edge_mounted(Builder& b, const EdgeMountedSphereSpec& s, const GenCtx& cx) {
    require(s.radius_mm > 0 && s.mount_offset_mm > 0 && s.mount_offset_mm < s.radius_mm,
            "edge-mount offset must lie in (0, radius)");
    Ring rim = sphere_shell(b, s.radius_mm, hole_radius(cx.coax), cx.edge, {});
    // Tilt so that in plan view the mount sits mount_offset from the rim.
    const double beta = std::asin(1.0 - s.mount_offset_mm / s.radius_mm);
    for (Vec3& v : b.mesh.vertices) v = rotate_y(v, beta);
    return rim;
}

Ring gen_fin_sphere(Builder& b, const FinSphereSpec& s, const GenCtx& cx) {
    require(s.envelope_radius_mm > 10.0 && s.fin_count > 0,
            "fin sphere needs envelope radius > 10 mm and fin count > 0");
    const double R = s.envelope_radius_mm;
    // Hub collar the coax grounds to; fins stand just below it.
    const double hub_r = 6.0;
    const double hole_r = hole_radius(cx.coax);
    std::vector<double> rhos = fill_open(hole_r, hub_r, 1.5);
    Ring rim;
    {
        Ring prev;
        for (std::size_t k = 0; k < rhos.size(); ++k) {
            const double rho = rhos[k];
            Ring ring = make_ring(b, uniform_angles(8), true, [&](double phi) {
                return Vec3{rho * std::cos(phi), rho * std::sin(phi), 0.0};
            });
            if (k == 0) rim = ring;
            else strip(b, prev, ring, RegionTag::Metal, /*flip=*/true);
            prev = ring;
        }
    }
    const Vec3 center{0, 0, -R};
    const double psi_top = std::asin(std::min(0.5, 8.0 / R));
    const double psi_bot = kPi - std::asin(std::min(0.5, 4.0 / R));
    const double rho_in = 6.0;
    for (int f = 0; f < s.fin_count; ++f) {
        const double phi = kTau * f / s.fin_count;
        const Vec3 u{std::cos(phi), std::sin(phi), 0.0};
        std::vector<double> rr = fill_open(rho_in, R, cx.edge);
        Ring prev;
        for (std::size_t k = 0; k < rr.size(); ++k) {
            const double rho = rr[k];
            std::vector<double> psis =
                fill_open(psi_top, psi_bot, std::max(0.05, cx.edge / rho));
            Ring ring;
            ring.closed = false;
            ring.ang = psis;
            for (double psi : psis)
                ring.v.push_back(
                    b.vertex(center + (u * std::sin(psi) + Vec3{0, 0, 1} * std::cos(psi)) * rho));
            if (k > 0) strip(b, prev, ring, RegionTag::Metal, false);
            prev = ring;
        }
    }
    return rim;
}

Ring gen_spiked(Builder& b, const SpikedSphereSpec& s, const GenCtx& cx) {
    require(s.radius_mm > 0 && s.spike_length_mm > 0 && s.spike_diameter_mm > 0 &&
                s.spike_pitch_mm > 0,
            "spiked sphere dimensions must be positive");
    require(s.spike_pitch_mm > s.spike_diameter_mm, "spike pitch smaller than spike diameter");
    Ring rim = sphere_shell(b, s.radius_mm, hole_radius(cx.coax), cx.edge, {});
    const double R = s.radius_mm;
    const Vec3 center{0, 0, -R};
    const double a = s.spike_diameter_mm / 2.0;
    const double standoff = 0.5;
    const double alpha_start = std::asin(hole_radius(cx.coax) / R) + 8.0 / R;
    int spikes = 0;
    for (double alpha = alpha_start; alpha < kPi - 8.0 / R; alpha += s.spike_pitch_mm / R) {
        const double circ = kTau * R * std::sin(alpha);
        const int m = std::max(1, static_cast<int>(std::floor(circ / s.spike_pitch_mm)));
        for (int j = 0; j < m; ++j) {
            const double phi = kTau * j / m;
            const Vec3 dir{std::sin(alpha) * std::cos(phi), std::sin(alpha) * std::sin(phi),
                           std::cos(alpha)};
            const Vec3 base = center + dir * (R + standoff);
            // Local frame for the hexagonal prism.
            Vec3 e1 = dir.cross(Vec3{0, 0, 1});
            if (e1.norm() < 1e-6) e1 = Vec3{1, 0, 0};
            e1 = e1.normalized();
            const Vec3 e2 = dir.cross(e1);
            Ring lo, hi;
            lo.closed = hi.closed = true;
            for (int q = 0; q < 6; ++q) {
                const double t = kTau * q / 6;
                lo.ang.push_back(t);
                hi.ang.push_back(t);
                const Vec3 off = (e1 * std::cos(t) + e2 * std::sin(t)) * a;
                lo.v.push_back(b.vertex(base + off));
                hi.v.push_back(b.vertex(base + dir * s.spike_length_mm + off));
            }
            strip(b, lo, hi, RegionTag::Metal, false);
            const int apex = b.vertex(base + dir * (s.spike_length_mm + 0.4 * a));
            fan(b, hi, apex, RegionTag::Metal, false);
            ++spikes;
        }
    }
    (void)spikes;
    return rim;
}

}  // namespace

void CoaxModel::validate() const {
    require(inner_mm > 0 && dielectric_mm > inner_mm && outer_mm > dielectric_mm,
            "coax diameters must satisfy inner < dielectric < outer");
    require(element_mm > 0, "element length must be positive");
    require(gap_mm >= 0, "feed gap must be non-negative");
}

std::string spec_name(const GroundPlaneSpec& spec) {
    struct V {
        std::string operator()(const PlanarSpec&) const { return "planar"; }
        std::string operator()(const RibbedPlanarSpec&) const { return "ribbed_planar"; }
        std::string operator()(const PlanarDishSpec&) const { return "planar_dish"; }
        std::string operator()(const PlanarHornSpec&) const { return "planar_horn"; }
        std::string operator()(const PlanarConeSpec&) const { return "planar_cone"; }
        std::string operator()(const SphereSpec&) const { return "sphere"; }
        std::string operator()(const SlottedSphereSpec&) const { return "slotted_sphere"; }
        std::string operator()(const RingedSphereSpec&) const { return "ringed_sphere"; }
        std::string operator()(const EdgeMountedSphereSpec&) const {
            return "edge_mounted_sphere";
        }
        std::string operator()(const FinSphereSpec&) const { return "fin_sphere"; }
        std::string operator()(const SpikedSphereSpec&) const { return "spiked_sphere"; }
    };
    return std::visit(V{}, spec);
}

double dish_true_radius_mm(double parent_radius_mm, double cap_height_mm) {
    require(parent_radius_mm > 0, "parent radius must be positive");
    require(cap_height_mm >= 0 && cap_height_mm <= parent_radius_mm,
            "cap height must lie in [0, parent radius]");
    return std::sqrt(cap_height_mm * (2.0 * parent_radius_mm - cap_height_mm));
}

TriMesh generate(const GroundPlaneSpec& spec, const CoaxModel& coax, double edge_mm,
                 const GenerateOptions& opt) {
    require(edge_mm > 0, "target edge length must be positive");
    coax.validate();
    Builder b;
    GenCtx cx{coax, edge_mm, opt};

    Ring rim = std::visit(
        [&](const auto& s) -> Ring { return [&]() {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PlanarSpec>) return gen_planar(b, s, cx);
            else if constexpr (std::is_same_v<T, RibbedPlanarSpec>) return gen_ribbed(b, s, cx);
            else if constexpr (std::is_same_v<T, PlanarDishSpec>) return gen_planar_dish(b, s, cx);
            else if constexpr (std::is_same_v<T, PlanarHornSpec>) return gen_planar_horn(b, s, cx);
            else if constexpr (std::is_same_v<T, PlanarConeSpec>) return gen_planar_cone(b, s, cx);
            else if constexpr (std::is_same_v<T, SphereSpec>) return gen_sphere(b, s, cx);
            else if constexpr (std::is_same_v<T, SlottedSphereSpec>) return gen_slotted(b, s, cx);
            else if constexpr (std::is_same_v<T, RingedSphereSpec>) return gen_ringed(b, s, cx);
            else if constexpr (std::is_same_v<T, EdgeMountedSphereSpec>)
                return gen_edge_mounted(b, s, cx);
            else if constexpr (std::is_same_v<T, FinSphereSpec>) return gen_fin_sphere(b, s, cx);
            else return gen_spiked(b, s, cx);
        }(); },
        spec);

    if (opt.include_element) attach_feed_and_element(b, rim, cx);

    if (static_cast<int>(b.mesh.triangles.size()) > opt.max_triangles) {
        std::ostringstream os;
        os << "geometry: " << spec_name(spec) << " produced " << b.mesh.triangles.size()
           << " triangles, above the cap of " << opt.max_triangles
           << "; increase the edge length or reduce feature counts";
        throw std::invalid_argument(os.str());
    }

    std::ostringstream prov;
    prov << spec_name(spec) << " edge=" << edge_mm << "mm";
    b.mesh.provenance = prov.str();
    b.mesh.target_edge_mm = edge_mm;
    return std::move(b.mesh);
}

TriMesh make_tube_dipole(double length_mm, double radius_mm, double seg_mm, int facets) {
    Builder b;
    const int half = std::max(2, static_cast<int>(std::ceil(length_mm / 2.0 / seg_mm)));
    Ring prev;
    Ring feed_ring;
    for (int k = -half; k <= half; ++k) {
        const double z = length_mm / 2.0 * k / half;
        Ring ring = make_ring(b, uniform_angles(facets), true, [&](double phi) {
            return Vec3{radius_mm * std::cos(phi), radius_mm * std::sin(phi), z};
        });
        if (k > -half) strip(b, prev, ring, RegionTag::Metal, false);
        if (k == 0) feed_ring = ring;
        prev = ring;
    }
    const int top = b.vertex(Vec3{0, 0, length_mm / 2.0});
    fan(b, prev, top, RegionTag::Metal, false);
    // bottom cap: the first created ring holds vertices 0..facets-1
    Ring bottom;
    bottom.closed = true;
    bottom.ang = uniform_angles(facets);
    for (int i = 0; i < facets; ++i) bottom.v.push_back(i);
    const int bot = b.vertex(Vec3{0, 0, -length_mm / 2.0});
    fan(b, bottom, bot, RegionTag::Metal, true);
    for (int i = 0; i < facets; ++i)
        b.mesh.feed_edges.push_back({feed_ring.v[i], feed_ring.v[(i + 1) % facets]});
    b.mesh.provenance = "tube_dipole";
    b.mesh.target_edge_mm = seg_mm;
    return std::move(b.mesh);
}

TriMesh make_image_monopole(double length_mm, double radius_mm, double seg_mm, int facets) {
    Builder b;
    const int n = std::max(2, static_cast<int>(std::ceil(length_mm / seg_mm)));
    Ring prev;
    Ring base;
    for (int k = 0; k <= n; ++k) {
        const double z = length_mm * k / n;
        Ring ring = make_ring(b, uniform_angles(facets), true, [&](double phi) {
            return Vec3{radius_mm * std::cos(phi), radius_mm * std::sin(phi), z};
        });
        if (k > 0) strip(b, prev, ring, RegionTag::Metal, false);
        if (k == 0) base = ring;
        prev = ring;
    }
    const int top = b.vertex(Vec3{0, 0, length_mm});
    fan(b, prev, top, RegionTag::Metal, false);
    for (int i = 0; i < facets; ++i)
        b.mesh.feed_edges.push_back({base.v[i], base.v[(i + 1) % facets]});
    b.mesh.provenance = "image_monopole";
    b.mesh.target_edge_mm = seg_mm;
    return std::move(b.mesh);
}

}  // namespace gpb
