#include "mesh.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

double TriMesh::triangle_area(std::size_t t) const {
    const auto& tr = triangles[t];
    return gpb::triangle_area(vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]);
}

Vec3 TriMesh::triangle_centroid(std::size_t t) const {
    const auto& tr = triangles[t];
    return (vertices[tr[0]] + vertices[tr[1]] + vertices[tr[2]]) / 3.0;
}

MeshReport mesh_report(const TriMesh& mesh) {
    MeshReport r;
    r.vertices = static_cast<int>(mesh.vertices.size());
    r.faces = static_cast<int>(mesh.triangles.size());

    std::map<std::pair<int, int>, int> edge_use;
    double min_angle = kPi;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tr = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tr[e], b = tr[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_use[{a, b}];
        }
        min_angle = std::fmin(min_angle,
                              triangle_min_angle(mesh.vertices[tr[0]], mesh.vertices[tr[1]],
                                                 mesh.vertices[tr[2]]));
        const double area = mesh.triangle_area(t);
        switch (mesh.tags[t]) {
            case RegionTag::Metal: r.area_metal_mm2 += area; break;
            case RegionTag::Masked: r.area_masked_mm2 += area; break;
            case RegionTag::FeedRing: r.area_feed_mm2 += area; break;
        }
    }
    r.edges = static_cast<int>(edge_use.size());
    for (const auto& [e, n] : edge_use)
        if (n == 1) ++r.boundary_edges;
    r.euler_characteristic = r.vertices - r.edges + r.faces;
    r.min_angle_deg = mesh.triangles.empty() ? 0.0 : min_angle * 180.0 / kPi;
    return r;
}

double surface_area(const TriMesh& mesh, std::initializer_list<RegionTag> tags) {
    double area = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        for (RegionTag tag : tags) {
            if (mesh.tags[t] == tag) {
                area += mesh.triangle_area(t);
                break;
            }
        }
    }
    return area;
}

double surface_area(const TriMesh& mesh) {
    return surface_area(mesh, {RegionTag::Metal, RegionTag::Masked, RegionTag::FeedRing});
}

namespace {

void put_f32(std::vector<uint8_t>& out, float v) {
    uint8_t b[4];
    std::memcpy(b, &v, 4);
    out.insert(out.end(), b, b + 4);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}

}  // namespace

std::vector<uint8_t> export_stl(const TriMesh& mesh) {
    if (mesh.triangles.empty()) throw std::runtime_error("export_stl: empty mesh");
    std::vector<uint8_t> out;
    out.reserve(84 + 50 * mesh.triangles.size());
    char header[80] = {};
    std::snprintf(header, sizeof(header), "gpbench surface mesh, units mm");
    out.insert(out.end(), header, header + 80);
    put_u32(out, static_cast<uint32_t>(mesh.triangles.size()));
    for (const auto& tr : mesh.triangles) {
        const Vec3& a = mesh.vertices[tr[0]];
        const Vec3& b = mesh.vertices[tr[1]];
        const Vec3& c = mesh.vertices[tr[2]];
        Vec3 n = (b - a).cross(c - a);
        const double len = n.norm();
        if (len > 0) n = n / len;
        put_f32(out, static_cast<float>(n.x));
        put_f32(out, static_cast<float>(n.y));
        put_f32(out, static_cast<float>(n.z));
        for (const Vec3* v : {&a, &b, &c}) {
            put_f32(out, static_cast<float>(v->x));
            put_f32(out, static_cast<float>(v->y));
            put_f32(out, static_cast<float>(v->z));
        }
        out.push_back(0);
        out.push_back(0);
    }
    return out;
}

void write_stl(const TriMesh& mesh, const std::string& path) {
    const auto bytes = export_stl(mesh);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_stl: cannot open " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::string export_off(const TriMesh& mesh) {
    std::ostringstream os;
    os << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", v.x, v.y, v.z);
        os << buf;
    }
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tr = mesh.triangles[t];
        os << "3 " << tr[0] << ' ' << tr[1] << ' ' << tr[2] << " # tag="
           << static_cast<int>(mesh.tags[t]) << '\n';
    }
    return os.str();
}

void write_off(const TriMesh& mesh, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_off: cannot open " + path);
    f << export_off(mesh);
}

void append_mesh(TriMesh& dst, const TriMesh& src) {
    const int base = static_cast<int>(dst.vertices.size());
    dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
    for (const auto& tr : src.triangles)
        dst.triangles.push_back({tr[0] + base, tr[1] + base, tr[2] + base});
    dst.tags.insert(dst.tags.end(), src.tags.begin(), src.tags.end());
    for (const auto& fe : src.feed_edges)
        dst.feed_edges.push_back({fe[0] + base, fe[1] + base});
}

}  // namespace gpb
