#include "efie.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

namespace {

using cplx = std::complex<double>;

struct CVec3 {
    cplx x, y, z;
    CVec3& operator+=(const CVec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

CVec3 operator*(const cplx& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
cplx dot(const CVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// --- triangle quadrature (barycentric), weights sum to 1 ---

struct QuadRule {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> w;
};

const QuadRule& quad_rule(int points) {
    static const QuadRule r1{{{1.0 / 3, 1.0 / 3, 1.0 / 3}}, {1.0}};
    static const QuadRule r3{{{2.0 / 3, 1.0 / 6, 1.0 / 6},
                              {1.0 / 6, 2.0 / 3, 1.0 / 6},
                              {1.0 / 6, 1.0 / 6, 2.0 / 3}},
                             {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    static const QuadRule r7 = [] {
        QuadRule q;
        const double a1 = 0.059715871789770, b1 = 0.470142064105115;
        const double a2 = 0.797426985353087, b2 = 0.101286507323456;
        q.bary = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1},
                  {a2, b2, b2},                {b2, a2, b2}, {b2, b2, a2}};
        q.w = {0.225,
               0.132394152788506, 0.132394152788506, 0.132394152788506,
               0.125939180544827, 0.125939180544827, 0.125939180544827};
        return q;
    }();
    switch (points) {
        case 1: return r1;
        case 3: return r3;
        case 7: return r7;
        default: throw std::invalid_argument("quad_rule: supported orders are 1, 3, 7");
    }
}

struct TriData {
    Vec3 v[3];      // meters
    double area;    // m^2
    Vec3 centroid;
    double hmax;    // longest edge, m
    std::vector<Vec3> qp_far, qp_near;
    std::vector<double> qw_far, qw_near;  // include the area factor
};

TriData make_tridata(const Vec3& a, const Vec3& b, const Vec3& c, const AssemblyOptions& opt) {
    TriData t;
    t.v[0] = a;
    t.v[1] = b;
    t.v[2] = c;
    t.area = triangle_area(a, b, c);
    t.centroid = (a + b + c) / 3.0;
    t.hmax = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    for (int pass = 0; pass < 2; ++pass) {
        const QuadRule& q = quad_rule(pass == 0 ? opt.far_rule : opt.near_rule);
        auto& qp = pass == 0 ? t.qp_far : t.qp_near;
        auto& qw = pass == 0 ? t.qw_far : t.qw_near;
        for (std::size_t i = 0; i < q.w.size(); ++i) {
            qp.push_back(a * q.bary[i][0] + b * q.bary[i][1] + c * q.bary[i][2]);
            qw.push_back(q.w[i] * t.area);
        }
    }
    return t;
}

// Analytic ∫_T 1/R dS' and ∫_T r'/R dS' for observation point p.
void static_potentials(const TriData& tri, const Vec3& p, double& i0, Vec3& iv) {
    const Vec3 n = (tri.v[1] - tri.v[0]).cross(tri.v[2] - tri.v[0]).normalized();
    const double w = (p - tri.v[0]).dot(n);
    const Vec3 u = p - n * w;  // projection onto the triangle plane
    const double aw = std::fabs(w);

    i0 = 0.0;
    Vec3 iv_inplane{0, 0, 0};
    for (int e = 0; e < 3; ++e) {
        const Vec3& A = tri.v[e];
        const Vec3& B = tri.v[(e + 1) % 3];
        const Vec3 s_hat = (B - A).normalized();
        const Vec3 m_hat = s_hat.cross(n);
        const double t = (A - u).dot(m_hat);
        const double sm = (A - u).dot(s_hat);
        const double sp = (B - u).dot(s_hat);
        const double r02 = t * t + w * w;
        const double rm = std::sqrt(sm * sm + r02);
        const double rp = std::sqrt(sp * sp + r02);

        double f2 = 0.0;
        if (r02 > 1e-24 * tri.hmax * tri.hmax) {
            f2 = (sp + sm > 0.0) ? std::log((rp + sp) / (rm + sm))
                                 : std::log((rm - sm) / (rp - sp));
        } else if (sm > 0.0 || sp < 0.0) {
            // Observation on the edge line but outside the segment.
            f2 = std::log(std::fabs(sp) / std::fabs(sm));
            if (sp < 0.0) f2 = -f2;
        }  // else: on the segment; the t * f2 term vanishes with t = 0

        const double beta = std::atan2(t * sp, r02 + aw * rp) - std::atan2(t * sm, r02 + aw * rm);
        i0 += t * f2 - aw * beta;
        iv_inplane += m_hat * 0.5 * (r02 * f2 + sp * rp - sm * rm);
    }
    iv = iv_inplane + u * i0;
}

// ∫∫ kernel moments over a triangle pair. Kernel includes 1/(4 pi).
struct Moments {
    cplx s{};      // ∫∫ G
    CVec3 pt{};    // ∫∫ G r      (test point)
    CVec3 ps{};    // ∫∫ G r'     (source point)
    cplx ptps{};   // ∫∫ G (r . r')
};

Moments transpose(const Moments& m) { return {m.s, m.ps, m.pt, m.ptps}; }

Moments average(const Moments& a, const Moments& b) {
    Moments m;
    m.s = 0.5 * (a.s + b.s);
    m.pt = {0.5 * (a.pt.x + b.pt.x), 0.5 * (a.pt.y + b.pt.y), 0.5 * (a.pt.z + b.pt.z)};
    m.ps = {0.5 * (a.ps.x + b.ps.x), 0.5 * (a.ps.y + b.ps.y), 0.5 * (a.ps.z + b.ps.z)};
    m.ptps = 0.5 * (a.ptps + b.ptps);
    return m;
}

Moments regular_moments(const TriData& T, const TriData& S, double k, bool near) {
    const auto& tp = near ? T.qp_near : T.qp_far;
    const auto& tw = near ? T.qw_near : T.qw_far;
    const auto& sp = near ? S.qp_near : S.qp_far;
    const auto& sw = near ? S.qw_near : S.qw_far;
    Moments m;
    for (std::size_t i = 0; i < tp.size(); ++i) {
        for (std::size_t j = 0; j < sp.size(); ++j) {
            const double R = (tp[i] - sp[j]).norm();
            const cplx g = std::exp(cplx(0.0, -k * R)) / (4.0 * kPi * R) * (tw[i] * sw[j]);
            m.s += g;
            m.pt += g * tp[i];
            m.ps += g * sp[j];
            m.ptps += g * tp[i].dot(sp[j]);
        }
    }
    return m;
}

// Singularity-extracted one-way route: near-rule outer quadrature; inner
// integral = analytic static 1/R part + quadrature of (e^{-jkR}-1)/R.
Moments singular_oneway(const TriData& T, const TriData& S, double k) {
    Moments m;
    for (std::size_t i = 0; i < T.qp_near.size(); ++i) {
        const Vec3& p = T.qp_near[i];
        double i0;
        Vec3 iv;
        static_potentials(S, p, i0, iv);
        cplx inner_s = i0 / (4.0 * kPi);
        CVec3 inner_v = cplx(1.0 / (4.0 * kPi), 0.0) * iv;
        for (std::size_t j = 0; j < S.qp_near.size(); ++j) {
            const double R = (p - S.qp_near[j]).norm();
            cplx f;
            if (R < 1e-14)
                f = cplx(0.0, -k) / (4.0 * kPi);
            else
                f = (std::exp(cplx(0.0, -k * R)) - 1.0) / (4.0 * kPi * R);
            f *= S.qw_near[j];
            inner_s += f;
            inner_v += f * S.qp_near[j];
        }
        const double wt = T.qw_near[i];
        m.s += wt * inner_s;
        m.pt += (wt * inner_s) * p;
        m.ps += {wt * inner_v.x, wt * inner_v.y, wt * inner_v.z};
        m.ptps += wt * (inner_v.x * p.x + inner_v.y * p.y + inner_v.z * p.z);
    }
    return m;
}

Moments singular_moments(const TriData& T, const TriData& S, double k) {
    return average(singular_oneway(T, S, k), transpose(singular_oneway(S, T, k)));
}

enum class PairClass { Far, Near, Singular };

PairClass classify(const TriData& A, const TriData& B, bool share_vertex, double near_ratio) {
    if (share_vertex) return PairClass::Singular;
    const double d = (A.centroid - B.centroid).norm();
    const double h = std::max(A.hmax, B.hmax);
    if (d < 1.0 * h) return PairClass::Singular;
    if (d < near_ratio * h) return PairClass::Near;
    return PairClass::Far;
}

Moments pair_moments(const TriData& A, const TriData& B, bool share_vertex, double k,
                     const AssemblyOptions& opt) {
    switch (classify(A, B, share_vertex, opt.near_ratio)) {
        case PairClass::Singular: return singular_moments(A, B, k);
        case PairClass::Near: return regular_moments(A, B, k, true);
        default: return regular_moments(A, B, k, false);
    }
}

struct TriBasisRef {
    int basis;
    double sign;   // +1 plus triangle, -1 minus triangle
    Vec3 vfree;    // free vertex, meters
};

}  // namespace

SystemMatrix assemble(const RwgBasisSet& basis, const MediumParams& medium,
                      const AssemblyOptions& options) {
    medium.validate();
    const TriMesh& mesh = *basis.mesh;
    const double k = medium.wavenumber;
    const double omega = 2.0 * kPi * medium.frequency_hz;
    const cplx jwmu(0.0, omega * medium.mu_hpm);

    const int n = static_cast<int>(basis.size());
    SystemMatrix sys;
    sys.n = n;
    sys.frequency_hz = medium.frequency_hz;
    sys.options = options;
    sys.z.assign(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));

    // Active triangles and their basis references.
    std::vector<int> tri_ids;
    std::vector<std::vector<TriBasisRef>> refs;
    {
        std::vector<std::vector<TriBasisRef>> by_tri(mesh.triangles.size());
        for (int b = 0; b < n; ++b) {
            const RwgBasis& rb = basis.bases[b];
            by_tri[rb.tri_plus].push_back({b, 1.0, mesh.vertices[rb.free_plus] * 1e-3});
            if (!rb.half)
                by_tri[rb.tri_minus].push_back({b, -1.0, mesh.vertices[rb.free_minus] * 1e-3});
        }
        for (std::size_t t = 0; t < by_tri.size(); ++t)
            if (!by_tri[t].empty()) {
                tri_ids.push_back(static_cast<int>(t));
                refs.push_back(std::move(by_tri[t]));
            }
    }
    const int nt = static_cast<int>(tri_ids.size());

    std::vector<TriData> tris(nt);
    std::vector<TriData> mirror_tris;
    for (int i = 0; i < nt; ++i) {
        const auto& tr = mesh.triangles[tri_ids[i]];
        tris[i] = make_tridata(mesh.vertices[tr[0]] * 1e-3, mesh.vertices[tr[1]] * 1e-3,
                               mesh.vertices[tr[2]] * 1e-3, options);
    }
    if (options.image_ground) {
        mirror_tris.resize(nt);
        for (int i = 0; i < nt; ++i) {
            auto mirror = [](Vec3 v) { return Vec3{v.x, v.y, -v.z}; };
            mirror_tris[i] = make_tridata(mirror(tris[i].v[0]), mirror(tris[i].v[1]),
                                          mirror(tris[i].v[2]), options);
        }
    }

    auto share_vertex = [&](int a, int b) {
        const auto& ta = mesh.triangles[tri_ids[a]];
        const auto& tb = mesh.triangles[tri_ids[b]];
        for (int i : ta)
            for (int j : tb)
                if (i == j) return true;
        return false;
    };
    auto share_vertex_geo = [&](const TriData& A, const TriData& B) {
        for (const Vec3& a : A.v)
            for (const Vec3& b : B.v)
                if ((a - b).norm2() < 1e-24) return true;
        return false;
    };

    // Scatter one tri-pair's moments into the matrix. The image flag flips
    // the source basis sign (f* = -f mirrored) which also carries the image
    // charge sign.
    auto scatter = [&](int a, int b, const Moments& m, bool mirrored_source) {
        for (const TriBasisRef& rm : refs[a]) {
            const RwgBasis& bm = basis.bases[rm.basis];
            for (const TriBasisRef& rn : refs[b]) {
                const RwgBasis& bn = basis.bases[rn.basis];
                Vec3 vn = rn.vfree;
                double sn = rn.sign;
                if (mirrored_source) {
                    vn.z = -vn.z;
                    sn = -sn;
                }
                const cplx vterm = m.ptps - dot(m.pt, vn) - dot(m.ps, rm.vfree) +
                                   rm.vfree.dot(vn) * m.s;
                const cplx val = jwmu * rm.sign * sn * bm.length_m * bn.length_m /
                                 (tris[a].area * (mirrored_source ? mirror_tris[b].area
                                                                  : tris[b].area)) *
                                 (vterm / 4.0 - m.s / (k * k));
                sys.at(rm.basis, rn.basis) += val;
            }
        }
    };

    for (int a = 0; a < nt; ++a) {
        for (int b = a; b < nt; ++b) {
            const Moments m = pair_moments(tris[a], tris[b], share_vertex(a, b), k, options);
            scatter(a, b, m, false);
            if (b != a) scatter(b, a, transpose(m), false);
        }
    }
    if (options.image_ground) {
        for (int a = 0; a < nt; ++a) {
            for (int b = 0; b < nt; ++b) {
                const bool touch = share_vertex_geo(tris[a], mirror_tris[b]);
                const Moments m = pair_moments(tris[a], mirror_tris[b], touch, k, options);
                scatter(a, b, m, true);
            }
        }
    }

    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!std::isfinite(sys.at(r, c).real()) || !std::isfinite(sys.at(r, c).imag()))
                throw std::runtime_error("assemble: non-finite entry at basis pair (" +
                                         std::to_string(r) + ", " + std::to_string(c) + ")");
    return sys;
}

CurrentSolution solve(const SystemMatrix& matrix, const RwgBasisSet& basis,
                      const Excitation& excitation) {
    const int n = matrix.n;
    if (n <= 0) throw std::runtime_error("solve: empty system");
    if (basis.feed_bases.empty())
        throw std::runtime_error("solve: basis set has no feed edges");
    if (std::abs(excitation.voltage) == 0.0)
        throw std::runtime_error("solve: excitation voltage must be nonzero");

    std::vector<cplx> rhs(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < basis.feed_bases.size(); ++i) {
        const int b = basis.feed_bases[i];
        rhs[b] += basis.feed_signs[i] * excitation.voltage * basis.bases[b].length_m;
    }

    std::vector<cplx> lu = matrix.z;
    double anorm = 0.0;  // 1-norm: max column abs sum
    for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int r = 0; r < n; ++r) s += std::abs(matrix.at(r, c));
        anorm = std::max(anorm, s);
    }

    std::vector<lapack_int> piv(n);
    lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, lu.data(), n, piv.data());
    if (info != 0)
        throw std::runtime_error("solve: LU factorization failed (info=" +
                                 std::to_string(info) + ")");
    double rcond = 0.0;
    info = LAPACKE_zgecon(LAPACK_ROW_MAJOR, '1', n, lu.data(), n, anorm, &rcond);
    if (info != 0) throw std::runtime_error("solve: condition estimate failed");
    if (rcond > 0.0 && 1.0 / rcond > 1e12)
        throw std::runtime_error("solve: matrix ill-conditioned (cond ~ " +
                                 std::to_string(1.0 / rcond) + ")");

    std::vector<cplx> x = rhs;
    info = LAPACKE_zgetrs(LAPACK_ROW_MAJOR, 'N', n, 1, lu.data(), n, piv.data(), x.data(), 1);
    if (info != 0) throw std::runtime_error("solve: back-substitution failed");

    // Residual check against the untouched matrix.
    double rnum = 0.0, rden = 0.0;
    for (int r = 0; r < n; ++r) {
        cplx acc(0.0, 0.0);
        for (int c = 0; c < n; ++c) acc += matrix.at(r, c) * x[c];
        rnum += std::norm(acc - rhs[r]);
        rden += std::norm(rhs[r]);
    }
    const double residual = std::sqrt(rnum / rden);
    if (residual > 1e-8)
        throw std::runtime_error("solve: residual " + std::to_string(residual) +
                                 " above 1e-8");

    CurrentSolution sol;
    sol.basis = &basis;
    sol.frequency_hz = matrix.frequency_hz;
    sol.coeffs = std::move(x);
    sol.voltage = excitation.voltage;
    sol.image_ground = matrix.options.image_ground;
    cplx ifeed(0.0, 0.0);
    for (std::size_t i = 0; i < basis.feed_bases.size(); ++i) {
        const int b = basis.feed_bases[i];
        ifeed += basis.feed_signs[i] * basis.bases[b].length_m * sol.coeffs[b];
    }
    sol.i_feed = ifeed;
    sol.zin = excitation.voltage / ifeed;
    sol.residual = residual;
    sol.rcond = rcond;
    return sol;
}

CurrentSolution solve_image_ground(const TriMesh& element_mesh, const MediumParams& medium,
                                   const Excitation& excitation, AssemblyOptions options) {
    for (const Vec3& v : element_mesh.vertices)
        if (v.z < -1e-9)
            throw std::invalid_argument(
                "solve_image_ground: geometry crosses the z = 0 ground plane");
    options.image_ground = true;
    auto owned = std::make_shared<RwgBasisSet>(
        build_basis(element_mesh, /*ground_plane_halves=*/true));
    SystemMatrix sys = assemble(*owned, medium, options);
    CurrentSolution sol = solve(sys, *owned, excitation);
    sol.owned_basis = owned;
    sol.basis = owned.get();
    return sol;
}

std::vector<double> surface_current_map(const CurrentSolution& solution) {
    const RwgBasisSet& basis = *solution.basis;
    const TriMesh& mesh = *basis.mesh;
    std::vector<CVec3> j(mesh.triangles.size(), CVec3{});
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const RwgBasis& rb = basis.bases[b];
        const cplx c = solution.coeffs[b];
        auto add = [&](int tri, int vfree, double sign) {
            const Vec3 centroid = mesh.triangle_centroid(tri) * 1e-3;
            const Vec3 vf = mesh.vertices[vfree] * 1e-3;
            const double area = mesh.triangle_area(tri) * 1e-6;
            const Vec3 f = (centroid - vf) * (sign * rb.length_m / (2.0 * area));
            j[tri] += c * f;
        };
        add(rb.tri_plus, rb.free_plus, 1.0);
        if (!rb.half) add(rb.tri_minus, rb.free_minus, -1.0);
    }
    std::vector<double> mag(mesh.triangles.size(), 0.0);
    for (std::size_t t = 0; t < mag.size(); ++t)
        mag[t] = std::sqrt(std::norm(j[t].x) + std::norm(j[t].y) + std::norm(j[t].z));
    return mag;
}

}  // namespace gpb
