#include "cmc/mesh.hpp"

#include <cmath>
#include <map>
#include <ostream>

namespace cmc {

namespace {

void add_edge(std::map<std::pair<int, int>, int>& edges, int a, int b) {
    edges[{std::min(a, b), std::max(a, b)}]++;
}

}  // namespace

ObjMesh sample_mesh(const CatalogEntry& entry, int nu, int nv) {
    const SurfaceDomain& dom = entry.surface->domain();
    ObjMesh mesh;
    mesh.vertices.reserve(nu * nv);
    mesh.normals.reserve(nu * nv);

    const double du = (dom.u1 - dom.u0) / (entry.wrap_u ? nu : nu - 1);
    const double dv = (dom.v1 - dom.v0) / (entry.wrap_v ? nv : nv - 1);
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nu; ++i) {
            const double u = dom.u0 + i * du;
            const double v = dom.v0 + j * dv;
            const Jet2 jet = entry.surface->jet(u, v);
            mesh.vertices.push_back(jet.x);
            mesh.normals.push_back(cross(jet.xu, jet.xv).normalized());
        }
    }
    mesh.grid_vertex_count = static_cast<int>(mesh.vertices.size());

    auto vid = [&](int i, int j) { return (j % nv) * nu + (i % nu); };
    const int iu_max = entry.wrap_u ? nu : nu - 1;
    const int jv_max = entry.wrap_v ? nv : nv - 1;
    for (int j = 0; j < jv_max; ++j) {
        for (int i = 0; i < iu_max; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }

    // Cap open v-ends with a centroid apex fan (closes the topology).
    auto cap = [&](int j, bool flip) {
        Vec3 centroid{};
        for (int i = 0; i < nu; ++i) centroid += mesh.vertices[vid(i, j)];
        centroid = centroid / double(nu);
        Vec3 normal{};
        for (int i = 0; i < nu; ++i) normal += mesh.normals[vid(i, j)];
        const int apex = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(centroid);
        mesh.normals.push_back(normal.norm() > 1e-12 ? normal.normalized() : Vec3{0, 0, 1});
        for (int i = 0; i < nu; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j);
            if (flip) {
                mesh.faces.push_back({apex, b, a});
            } else {
                mesh.faces.push_back({apex, a, b});
            }
        }
    };
    if (entry.cap_v0 && entry.wrap_u) cap(0, false);
    if (entry.cap_v1 && entry.wrap_u) cap(nv - 1, true);

    std::map<std::pair<int, int>, int> edges;
    for (const auto& f : mesh.faces) {
        add_edge(edges, f[0], f[1]);
        add_edge(edges, f[1], f[2]);
        add_edge(edges, f[2], f[0]);
    }
    mesh.watertight = !edges.empty();
    for (const auto& [edge, count] : edges) {
        if (count != 2) {
            mesh.watertight = false;
            break;
        }
    }
    return mesh;
}

void write_obj(const ObjMesh& mesh, std::ostream& os) {
    os << "# parametric surface mesh\n";
    os.precision(12);
    for (const Vec3& v : mesh.vertices) {
        os << "v " << v.x << " " << v.y << " " << v.z << "\n";
    }
    for (const Vec3& n : mesh.normals) {
        os << "vn " << n.x << " " << n.y << " " << n.z << "\n";
    }
    for (const auto& f : mesh.faces) {
        os << "f " << f[0] + 1 << "//" << f[0] + 1 << " " << f[1] + 1 << "//" << f[1] + 1 << " "
           << f[2] + 1 << "//" << f[2] + 1 << "\n";
    }
}

std::vector<double> metric_edge_lengths(const ParametricSurface& surface,
                                        const SurfaceDomain& window, int nu, int nv) {
    std::vector<double> lengths;
    lengths.reserve(2 * nu * nv);
    const double du = (window.u1 - window.u0) / (nu - 1);
    const double dv = (window.v1 - window.v0) / (nv - 1);
    auto metric_len = [&](double u, double v, double eu, double ev) {
        const FrameData f = frame_at(surface, u, v);
        return std::sqrt(f.E * eu * eu + 2 * f.F * eu * ev + f.G * ev * ev);
    };
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nu; ++i) {
            const double u = window.u0 + i * du;
            const double v = window.v0 + j * dv;
            if (i + 1 < nu) lengths.push_back(metric_len(u + 0.5 * du, v, du, 0.0));
            if (j + 1 < nv) lengths.push_back(metric_len(u, v + 0.5 * dv, 0.0, dv));
        }
    }
    return lengths;
}

}  // namespace cmc
