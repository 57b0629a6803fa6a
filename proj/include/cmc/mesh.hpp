#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "cmc/catalog.hpp"
#include "cmc/surface.hpp"

namespace cmc {

struct ObjMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<std::array<int, 3>> faces;  // 0-based vertex indices
    bool watertight = false;                // every edge shared by exactly two faces
    int grid_vertex_count = 0;              // vertices from the grid (excluding cap apices)
};

// Samples an nu x nv grid over the entry's domain. Wrapped directions sample
// the half-open interval so seams share vertices; capped ends get an apex
// vertex with a triangle fan.
ObjMesh sample_mesh(const CatalogEntry& entry, int nu, int nv);

void write_obj(const ObjMesh& mesh, std::ostream& os);

// Induced-metric lengths of all grid edges (first fundamental form at edge
// midpoints); isometric surfaces agree on these.
std::vector<double> metric_edge_lengths(const ParametricSurface& surface,
                                        const SurfaceDomain& window, int nu, int nv);

}  // namespace cmc
