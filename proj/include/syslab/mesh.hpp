#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "syslab/metric.hpp"

namespace syslab {

struct MeshDims {
    int nx = 0, ny = 0, nz = 0;
    bool operator==(const MeshDims&) const = default;
};

enum class Axis : int { X = 0, Y = 1, Z = 2 };

/// Face types named by the axes they span. Orientations are fixed once
/// and for all: YZ ~ dy^dz (normal +x), XZ ~ dz^dx (normal +y),
/// XY ~ dx^dy (normal +z).
enum class FaceType : int { YZ = 0, XZ = 1, XY = 2 };

struct WindingClass {
    int a = 0;  // winding in z (the class of the unit circle C)
    int b = 0;  // winding in y
    bool trivial() const { return a == 0 && b == 0; }
    bool operator==(const WindingClass&) const = default;
};

/// Integer chain on the mesh. Z2 chains store coefficients in {0, 1}.
enum class CoefMode { Z, Z2 };

struct Chain {
    int dimension = 1;
    CoefMode mode = CoefMode::Z;
    bool relative = false;  // boundary faces on the x-ends left free
    std::map<int64_t, int64_t> coef;

    void add(int64_t cell, int64_t c);
    bool empty() const { return coef.empty(); }
};

/// Metric-weighted cubical complex on [0, Lx] x T^2_{y,z}. The x axis is
/// an interval (nx + 1 gridlines), y and z are circles (ny, nz
/// gridlines). Edge weights are Riemannian lengths (2-point Gauss),
/// face weights Riemannian areas (2x2 Gauss), cell volumes
/// sqrt(det g) at the center times the coordinate volume.
class CubicalMesh {
public:
    MeshDims dims;
    double Lx = 1.0;
    double hx = 0.0, hy = 0.0, hz = 0.0;
    std::vector<double> edge_weight;  // x-edges, then y-edges, then z-edges
    std::vector<double> face_weight;  // YZ, then XZ, then XY
    std::vector<double> cell_volume;
    std::optional<MetricParams> source_params;  // set by build_mesh

    // --- counts ---
    int64_t n_vertices() const { return int64_t(dims.nx + 1) * dims.ny * dims.nz; }
    int64_t n_edges(Axis d) const {
        return (d == Axis::X) ? int64_t(dims.nx) * dims.ny * dims.nz
                              : int64_t(dims.nx + 1) * dims.ny * dims.nz;
    }
    int64_t n_edges_total() const {
        return n_edges(Axis::X) + n_edges(Axis::Y) + n_edges(Axis::Z);
    }
    int64_t n_faces(FaceType t) const {
        return (t == FaceType::YZ) ? int64_t(dims.nx + 1) * dims.ny * dims.nz
                                   : int64_t(dims.nx) * dims.ny * dims.nz;
    }
    int64_t n_faces_total() const {
        return n_faces(FaceType::YZ) + n_faces(FaceType::XZ) + n_faces(FaceType::XY);
    }
    int64_t n_cells() const { return int64_t(dims.nx) * dims.ny * dims.nz; }

    // --- index builders (iy, iz taken modulo the period) ---
    int64_t vertex_index(int ix, int iy, int iz) const;
    int64_t edge_index(Axis d, int ix, int iy, int iz) const;
    int64_t face_index(FaceType t, int ix, int iy, int iz) const;
    int64_t cell_index(int ix, int iy, int iz) const;

    struct VertexCoord { int ix, iy, iz; };
    VertexCoord vertex_coord(int64_t v) const;
    struct EdgeCoord { Axis d; int ix, iy, iz; };
    EdgeCoord edge_coord(int64_t e) const;
    struct FaceCoord { FaceType t; int ix, iy, iz; };
    FaceCoord face_coord(int64_t f) const;
    struct CellCoord { int ix, iy, iz; };
    CellCoord cell_coord(int64_t c) const;

    /// Endpoints of an edge (tail, head), head in the +axis direction.
    std::pair<int64_t, int64_t> edge_vertices(int64_t e) const;

    double edge_w(int64_t e) const { return edge_weight[e]; }
    double face_w(int64_t f) const { return face_weight[f]; }

    /// Coordinates of a vertex.
    PointTI vertex_point(int64_t v) const;

    /// True when every edge weight is independent of (iy, iz); the
    /// shortest-cycle search then only needs one base vertex per
    /// x-gridline.
    bool translation_invariant_weights() const;
};

/// Boundary of a 1- or 2-chain (dimension drops by one). Relative
/// 2-chains drop boundary edges lying in the x-end gridplanes.
Chain boundary(const CubicalMesh& mesh, const Chain& chain);

/// Boundary of a set of 3-cells as an (absolute) Z 2-chain; used for
/// homology-invariance checks.
Chain cell_set_boundary(const CubicalMesh& mesh, const std::vector<int64_t>& cells);

/// True when boundary(chain) vanishes (absolute case) or is supported
/// on the x-end gridplanes (relative case).
bool is_cycle(const CubicalMesh& mesh, const Chain& chain);

/// Net (y, z) winding of a Z2/Z 1-cycle, counted by signed crossings of
/// the y = 0 and z = 0 gridplanes.
WindingClass chain_winding(const CubicalMesh& mesh, const Chain& chain);

/// Mesh over the metric family; validates the resolution contract
/// (nx >= 4j, ny, nz >= 8).
CubicalMesh build_mesh(const MetricParams& params, MeshDims dims);

/// Mesh over an arbitrary pointwise metric on [0, Lx] x T^2 (control
/// meshes for tests).
CubicalMesh build_mesh_from_field(const MetricField& field, double Lx, MeshDims dims);

/// Default resolution policy (nx, ny, nz) = (max(32, 8j), max(16, 4j), 16),
/// optionally capped by a cell budget.
struct ResolutionPolicy {
    int64_t max_cells = 1 << 24;
    bool capped_last_query = false;  // set when the budget forced a reduction
    MeshDims resolution_for(double j);
};

} // namespace syslab
