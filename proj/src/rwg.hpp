#pragma once

#include <vector>

#include "mesh.hpp"

namespace gpb {

/// One Rao-Wilton-Glisson edge basis. Geometry is referenced into the mesh;
/// lengths/areas are cached in meters. A "half" basis has only the plus
/// triangle and lives on a boundary edge lying in the z = 0 ground plane
/// (image-ground mode).
struct RwgBasis {
    int tri_plus = -1;
    int tri_minus = -1;   // -1 for half bases
    int free_plus = -1;   // global index of the free vertex in tri_plus
    int free_minus = -1;
    int e0 = -1, e1 = -1; // shared edge, e0 < e1
    double length_m = 0.0;
    bool half = false;
};

struct RwgBasisSet {
    const TriMesh* mesh = nullptr;
    std::vector<RwgBasis> bases;           // sorted by (e0, e1)
    std::vector<int> feed_bases;           // indices into `bases`
    std::vector<double> feed_signs;        // +1 when plus->minus crossing is +z

    std::size_t size() const { return bases.size(); }
};

/// Build the basis set. Masked triangles contribute no bases. With
/// ground_plane_halves, boundary edges lying on z = 0 get half bases
/// (their triangle must be above the plane).
/// Throws std::invalid_argument when no interior edge exists or a feed
/// edge has no basis.
RwgBasisSet build_basis(const TriMesh& mesh, bool ground_plane_halves = false);

}  // namespace gpb
