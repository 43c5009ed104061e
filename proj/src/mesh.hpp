#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geom3.hpp"

namespace gpb {

enum class RegionTag : uint8_t {
    Metal = 0,     // conducting surface
    Masked = 1,    // masked-off (bare plastic), carries no current
    FeedRing = 2,  // transition collar where the delta-gap feed attaches
};

/// Triangulated surface in millimetres with per-triangle region tags.
/// Meshes are zero-thickness surfaces; the physical 1.5 mm sheet thickness
/// is carried as metadata only.
struct TriMesh {
    std::vector<Vec3> vertices;                   // mm
    std::vector<std::array<int, 3>> triangles;    // CCW seen from outside
    std::vector<RegionTag> tags;                  // one per triangle

    // Delta-gap ring: vertex index pairs of the edges the excitation spans.
    std::vector<std::array<int, 2>> feed_edges;

    std::string provenance;       // generating spec summary
    double target_edge_mm = 0.0;
    double sheet_thickness_mm = 1.5;

    std::size_t triangle_count() const { return triangles.size(); }
    double triangle_area(std::size_t t) const;
    Vec3 triangle_centroid(std::size_t t) const;
};

struct MeshReport {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int euler_characteristic = 0;
    int boundary_edges = 0;
    double min_angle_deg = 0.0;
    double area_metal_mm2 = 0.0;
    double area_masked_mm2 = 0.0;
    double area_feed_mm2 = 0.0;
    double total_area_mm2() const { return area_metal_mm2 + area_masked_mm2 + area_feed_mm2; }
};

MeshReport mesh_report(const TriMesh& mesh);

/// Sum of triangle areas carrying any of the given tags (mm^2).
double surface_area(const TriMesh& mesh, std::initializer_list<RegionTag> tags);
double surface_area(const TriMesh& mesh);  // all tags

/// Binary STL (80-byte header, LE u32 count, 50 bytes/facet), units mm.
/// Throws std::runtime_error on an empty mesh or I/O failure.
std::vector<uint8_t> export_stl(const TriMesh& mesh);
void write_stl(const TriMesh& mesh, const std::string& path);

/// Plain-text OFF-style listing for diffing.
std::string export_off(const TriMesh& mesh);
void write_off(const TriMesh& mesh, const std::string& path);

/// Append another mesh (vertices re-indexed). Feed edges are carried over.
void append_mesh(TriMesh& dst, const TriMesh& src);

}  // namespace gpb
