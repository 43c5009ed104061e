#include "rwg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gpb {

RwgBasisSet build_basis(const TriMesh& mesh, bool ground_plane_halves) {
    RwgBasisSet set;
    set.mesh = &mesh;

    struct EdgeUse {
        int tri;
        int free_vtx;
    };
    std::map<std::pair<int, int>, std::vector<EdgeUse>> edges;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (mesh.tags[t] == RegionTag::Masked) continue;
        const auto& tr = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tr[e], b = tr[(e + 1) % 3], c = tr[(e + 2) % 3];
            if (a > b) std::swap(a, b);
            edges[{a, b}].push_back({static_cast<int>(t), c});
        }
    }

    auto on_ground = [&](int v) { return std::fabs(mesh.vertices[v].z) < 1e-9; };

    for (const auto& [key, uses] : edges) {
        if (uses.size() > 2)
            throw std::invalid_argument("build_basis: non-manifold edge (used " +
                                        std::to_string(uses.size()) + " times)");
        RwgBasis b;
        b.e0 = key.first;
        b.e1 = key.second;
        b.length_m = (mesh.vertices[b.e1] - mesh.vertices[b.e0]).norm() * 1e-3;
        if (uses.size() == 2) {
            b.tri_plus = uses[0].tri;
            b.free_plus = uses[0].free_vtx;
            b.tri_minus = uses[1].tri;
            b.free_minus = uses[1].free_vtx;
        } else if (ground_plane_halves && on_ground(b.e0) && on_ground(b.e1)) {
            b.tri_plus = uses[0].tri;
            b.free_plus = uses[0].free_vtx;
            b.half = true;
        } else {
            continue;  // plain boundary edge: no degree of freedom
        }
        set.bases.push_back(b);
    }
    if (set.bases.empty())
        throw std::invalid_argument("build_basis: mesh has no interior edges");
    // std::map iteration is already (e0, e1)-sorted; keep that ordering.

    std::map<std::pair<int, int>, int> index;
    for (std::size_t i = 0; i < set.bases.size(); ++i)
        index[{set.bases[i].e0, set.bases[i].e1}] = static_cast<int>(i);

    for (const auto& fe : mesh.feed_edges) {
        int a = fe[0], bvtx = fe[1];
        if (a > bvtx) std::swap(a, bvtx);
        auto it = index.find({a, bvtx});
        if (it == index.end())
            throw std::invalid_argument("build_basis: feed edge has no basis function");
        const RwgBasis& b = set.bases[it->second];
        double sign = 1.0;
        if (!b.half) {
            const double zp = mesh.triangle_centroid(b.tri_plus).z;
            const double zm = mesh.triangle_centroid(b.tri_minus).z;
            sign = (zm >= zp) ? 1.0 : -1.0;  // +1: plus->minus crossing points +z
        }
        set.feed_bases.push_back(it->second);
        set.feed_signs.push_back(sign);
    }
    return set;
}

}  // namespace gpb
