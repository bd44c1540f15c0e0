#include "syslab/mesh.hpp"

#include <cmath>
#include <string>

namespace syslab {

namespace {

int wrap(int i, int n) {
    int r = i % n;
    return (r < 0) ? r + n : r;
}

} // namespace

void Chain::add(int64_t cell, int64_t c) {
    if (mode == CoefMode::Z2) c &= 1;
    if (c == 0) return;
    auto it = coef.find(cell);
    if (it == coef.end()) {
        coef.emplace(cell, c);
        return;
    }
    it->second += c;
    if (mode == CoefMode::Z2) it->second &= 1;
    if (it->second == 0) coef.erase(it);
}

int64_t CubicalMesh::vertex_index(int ix, int iy, int iz) const {
    iy = wrap(iy, dims.ny);
    iz = wrap(iz, dims.nz);
    return (int64_t(ix) * dims.ny + iy) * dims.nz + iz;
}

int64_t CubicalMesh::edge_index(Axis d, int ix, int iy, int iz) const {
    iy = wrap(iy, dims.ny);
    iz = wrap(iz, dims.nz);
    const int64_t local = (int64_t(ix) * dims.ny + iy) * dims.nz + iz;
    switch (d) {
        case Axis::X: return local;
        case Axis::Y: return n_edges(Axis::X) + local;
        case Axis::Z: return n_edges(Axis::X) + n_edges(Axis::Y) + local;
    }
    return -1;
}

int64_t CubicalMesh::face_index(FaceType t, int ix, int iy, int iz) const {
    iy = wrap(iy, dims.ny);
    iz = wrap(iz, dims.nz);
    const int64_t local = (int64_t(ix) * dims.ny + iy) * dims.nz + iz;
    switch (t) {
        case FaceType::YZ: return local;
        case FaceType::XZ: return n_faces(FaceType::YZ) + local;
        case FaceType::XY: return n_faces(FaceType::YZ) + n_faces(FaceType::XZ) + local;
    }
    return -1;
}

int64_t CubicalMesh::cell_index(int ix, int iy, int iz) const {
    iy = wrap(iy, dims.ny);
    iz = wrap(iz, dims.nz);
    return (int64_t(ix) * dims.ny + iy) * dims.nz + iz;
}

CubicalMesh::VertexCoord CubicalMesh::vertex_coord(int64_t v) const {
    const int iz = int(v % dims.nz);
    const int iy = int((v / dims.nz) % dims.ny);
    const int ix = int(v / (int64_t(dims.nz) * dims.ny));
    return {ix, iy, iz};
}

CubicalMesh::EdgeCoord CubicalMesh::edge_coord(int64_t e) const {
    Axis d = Axis::X;
    if (e >= n_edges(Axis::X) + n_edges(Axis::Y)) {
        d = Axis::Z;
        e -= n_edges(Axis::X) + n_edges(Axis::Y);
    } else if (e >= n_edges(Axis::X)) {
        d = Axis::Y;
        e -= n_edges(Axis::X);
    }
    const int iz = int(e % dims.nz);
    const int iy = int((e / dims.nz) % dims.ny);
    const int ix = int(e / (int64_t(dims.nz) * dims.ny));
    return {d, ix, iy, iz};
}

CubicalMesh::FaceCoord CubicalMesh::face_coord(int64_t f) const {
    FaceType t = FaceType::YZ;
    if (f >= n_faces(FaceType::YZ) + n_faces(FaceType::XZ)) {
        t = FaceType::XY;
        f -= n_faces(FaceType::YZ) + n_faces(FaceType::XZ);
    } else if (f >= n_faces(FaceType::YZ)) {
        t = FaceType::XZ;
        f -= n_faces(FaceType::YZ);
    }
    const int iz = int(f % dims.nz);
    const int iy = int((f / dims.nz) % dims.ny);
    const int ix = int(f / (int64_t(dims.nz) * dims.ny));
    return {t, ix, iy, iz};
}

CubicalMesh::CellCoord CubicalMesh::cell_coord(int64_t c) const {
    const int iz = int(c % dims.nz);
    const int iy = int((c / dims.nz) % dims.ny);
    const int ix = int(c / (int64_t(dims.nz) * dims.ny));
    return {ix, iy, iz};
}

std::pair<int64_t, int64_t> CubicalMesh::edge_vertices(int64_t e) const {
    const EdgeCoord ec = edge_coord(e);
    const int64_t tail = vertex_index(ec.ix, ec.iy, ec.iz);
    switch (ec.d) {
        case Axis::X: return {tail, vertex_index(ec.ix + 1, ec.iy, ec.iz)};
        case Axis::Y: return {tail, vertex_index(ec.ix, ec.iy + 1, ec.iz)};
        case Axis::Z: return {tail, vertex_index(ec.ix, ec.iy, ec.iz + 1)};
    }
    return {tail, tail};
}

PointTI CubicalMesh::vertex_point(int64_t v) const {
    const VertexCoord c = vertex_coord(v);
    return {c.ix * hx, c.iy * hy, c.iz * hz};
}

bool CubicalMesh::translation_invariant_weights() const {
    for (int axis = 0; axis < 3; ++axis) {
        const Axis d = Axis(axis);
        const int nx_lines = (d == Axis::X) ? dims.nx : dims.nx + 1;
        for (int ix = 0; ix < nx_lines; ++ix) {
            const double ref = edge_weight[edge_index(d, ix, 0, 0)];
            for (int iy = 0; iy < dims.ny; ++iy)
                for (int iz = 0; iz < dims.nz; ++iz)
                    if (std::abs(edge_weight[edge_index(d, ix, iy, iz)] - ref) >
                        1e-14 * (1.0 + std::abs(ref)))
                        return false;
        }
    }
    return true;
}

namespace {

// Boundary of a single oriented face as (edge, sign) quadruples.
// Conventions: YZ ~ dy^dz, XZ ~ dz^dx, XY ~ dx^dy.
void face_boundary(const CubicalMesh& m, const CubicalMesh::FaceCoord& fc,
                   std::array<std::pair<int64_t, int>, 4>& out) {
    const int ix = fc.ix, iy = fc.iy, iz = fc.iz;
    switch (fc.t) {
        case FaceType::YZ:
            out = {{{m.edge_index(Axis::Y, ix, iy, iz), +1},
                    {m.edge_index(Axis::Z, ix, iy + 1, iz), +1},
                    {m.edge_index(Axis::Y, ix, iy, iz + 1), -1},
                    {m.edge_index(Axis::Z, ix, iy, iz), -1}}};
            break;
        case FaceType::XZ:
            out = {{{m.edge_index(Axis::Z, ix, iy, iz), +1},
                    {m.edge_index(Axis::X, ix, iy, iz + 1), +1},
                    {m.edge_index(Axis::Z, ix + 1, iy, iz), -1},
                    {m.edge_index(Axis::X, ix, iy, iz), -1}}};
            break;
        case FaceType::XY:
            out = {{{m.edge_index(Axis::X, ix, iy, iz), +1},
                    {m.edge_index(Axis::Y, ix + 1, iy, iz), +1},
                    {m.edge_index(Axis::X, ix, iy + 1, iz), -1},
                    {m.edge_index(Axis::Y, ix, iy, iz), -1}}};
            break;
    }
}

bool edge_on_x_boundary(const CubicalMesh& m, int64_t e) {
    const auto ec = m.edge_coord(e);
    if (ec.d == Axis::X) return false;
    return ec.ix == 0 || ec.ix == m.dims.nx;
}

} // namespace

Chain boundary(const CubicalMesh& mesh, const Chain& chain) {
    Chain out;
    out.mode = chain.mode;
    out.dimension = chain.dimension - 1;
    if (chain.dimension == 1) {
        // 0-chain on vertices: head - tail per edge.
        for (const auto& [e, c] : chain.coef) {
            const auto [tail, head] = mesh.edge_vertices(e);
            out.add(head, c);
            out.add(tail, chain.mode == CoefMode::Z2 ? c : -c);
        }
        return out;
    }
    if (chain.dimension != 2)
        throw ValidationError("boundary: chain dimension must be 1 or 2");
    std::array<std::pair<int64_t, int>, 4> edges;
    for (const auto& [f, c] : chain.coef) {
        face_boundary(mesh, mesh.face_coord(f), edges);
        for (const auto& [e, s] : edges) {
            if (chain.relative && edge_on_x_boundary(mesh, e)) continue;
            out.add(e, chain.mode == CoefMode::Z2 ? c : c * s);
        }
    }
    return out;
}

Chain cell_set_boundary(const CubicalMesh& mesh, const std::vector<int64_t>& cells) {
    Chain out;
    out.dimension = 2;
    out.mode = CoefMode::Z;
    for (int64_t c : cells) {
        const auto cc = mesh.cell_coord(c);
        out.add(mesh.face_index(FaceType::YZ, cc.ix + 1, cc.iy, cc.iz), +1);
        out.add(mesh.face_index(FaceType::YZ, cc.ix, cc.iy, cc.iz), -1);
        out.add(mesh.face_index(FaceType::XZ, cc.ix, cc.iy + 1, cc.iz), +1);
        out.add(mesh.face_index(FaceType::XZ, cc.ix, cc.iy, cc.iz), -1);
        out.add(mesh.face_index(FaceType::XY, cc.ix, cc.iy, cc.iz + 1), +1);
        out.add(mesh.face_index(FaceType::XY, cc.ix, cc.iy, cc.iz), -1);
    }
    return out;
}

bool is_cycle(const CubicalMesh& mesh, const Chain& chain) {
    const Chain b = boundary(mesh, chain);
    if (!chain.relative) return b.empty();
    if (chain.dimension == 2) {
        for (const auto& [e, c] : b.coef)
            if (c != 0 && !edge_on_x_boundary(mesh, e)) return false;
        return true;
    }
    return b.empty();
}

WindingClass chain_winding(const CubicalMesh& mesh, const Chain& chain) {
    if (chain.dimension != 1)
        throw ValidationError("chain_winding: 1-chains only");
    // Signed crossings of the z = 0 gridplane count winding in z, and
    // likewise for y. For Z2 chains the count is only defined mod 2 per
    // crossing edge, which is enough for the primitive classes used here.
    int64_t a = 0, b = 0;
    for (const auto& [e, c] : chain.coef) {
        const auto ec = mesh.edge_coord(e);
        if (ec.d == Axis::Z && ec.iz == mesh.dims.nz - 1) a += c;
        if (ec.d == Axis::Y && ec.iy == mesh.dims.ny - 1) b += c;
    }
    return {int(a), int(b)};
}

namespace {

constexpr double kGauss2Lo = 0.21132486540518711775;  // (1 - 1/sqrt(3)) / 2
constexpr double kGauss2Hi = 0.78867513459481288225;

} // namespace

CubicalMesh build_mesh_from_field(const MetricField& field, double Lx, MeshDims dims) {
    if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1)
        throw ValidationError("build_mesh_from_field: positive resolution required");
    CubicalMesh m;
    m.dims = dims;
    m.Lx = Lx;
    m.hx = Lx / dims.nx;
    m.hy = 1.0 / dims.ny;
    m.hz = 1.0 / dims.nz;
    m.edge_weight.assign(m.n_edges_total(), 0.0);
    m.face_weight.assign(m.n_faces_total(), 0.0);
    m.cell_volume.assign(m.n_cells(), 0.0);

    const double gn[2] = {kGauss2Lo, kGauss2Hi};
    const double h[3] = {m.hx, m.hy, m.hz};

    auto metric_component = [&](const PointTI& p, int a, int b) {
        const SymmetricBilinear3 g = field(p);
        const auto M = g.as_matrix();
        return M[a][b];
    };

    // Edge lengths: 2-point Gauss along the edge.
    for (int axis = 0; axis < 3; ++axis) {
        const Axis d = Axis(axis);
        const int nx_lines = (d == Axis::X) ? dims.nx : dims.nx + 1;
        for (int ix = 0; ix < nx_lines; ++ix)
            for (int iy = 0; iy < dims.ny; ++iy)
                for (int iz = 0; iz < dims.nz; ++iz) {
                    double len = 0.0;
                    for (double t : gn) {
                        PointTI p{ix * m.hx, iy * m.hy, iz * m.hz};
                        (axis == 0 ? p.x : axis == 1 ? p.y : p.z) += t * h[axis];
                        len += 0.5 * std::sqrt(std::max(0.0, metric_component(p.reduced(), axis, axis)));
                    }
                    m.edge_weight[m.edge_index(d, ix, iy, iz)] = len * h[axis];
                }
    }

    // Face areas: 2x2 Gauss of sqrt(g_aa g_bb - g_ab^2) over the spanned axes.
    struct FaceSpec { FaceType t; int a, b; };
    const FaceSpec specs[3] = {{FaceType::YZ, 1, 2}, {FaceType::XZ, 0, 2}, {FaceType::XY, 0, 1}};
    for (const auto& fs : specs) {
        const int nx_lines = (fs.t == FaceType::YZ) ? dims.nx + 1 : dims.nx;
        for (int ix = 0; ix < nx_lines; ++ix)
            for (int iy = 0; iy < dims.ny; ++iy)
                for (int iz = 0; iz < dims.nz; ++iz) {
                    double area = 0.0;
                    for (double ta : gn)
                        for (double tb : gn) {
                            PointTI p{ix * m.hx, iy * m.hy, iz * m.hz};
                            (fs.a == 0 ? p.x : fs.a == 1 ? p.y : p.z) += ta * h[fs.a];
                            (fs.b == 0 ? p.x : fs.b == 1 ? p.y : p.z) += tb * h[fs.b];
                            const SymmetricBilinear3 g = field(p.reduced());
                            const auto M = g.as_matrix();
                            const double det2 =
                                M[fs.a][fs.a] * M[fs.b][fs.b] - M[fs.a][fs.b] * M[fs.a][fs.b];
                            area += 0.25 * std::sqrt(std::max(0.0, det2));
                        }
                    m.face_weight[m.face_index(fs.t, ix, iy, iz)] = area * h[fs.a] * h[fs.b];
                }
    }

    // Cell volumes: sqrt(det g) at the center.
    for (int ix = 0; ix < dims.nx; ++ix)
        for (int iy = 0; iy < dims.ny; ++iy)
            for (int iz = 0; iz < dims.nz; ++iz) {
                const PointTI c{(ix + 0.5) * m.hx, (iy + 0.5) * m.hy, (iz + 0.5) * m.hz};
                const double det = field(c.reduced()).det();
                m.cell_volume[m.cell_index(ix, iy, iz)] =
                    std::sqrt(std::max(0.0, det)) * m.hx * m.hy * m.hz;
            }
    return m;
}

CubicalMesh build_mesh(const MetricParams& params, MeshDims dims) {
    params.validate();
    if (dims.nx < 4.0 * params.j)
        throw ValidationError("build_mesh: nx must be at least 4j (two cells per unit x-length), got nx=" +
                              std::to_string(dims.nx) + " for j=" + std::to_string(params.j));
    if (dims.ny < 8 || dims.nz < 8)
        throw ValidationError("build_mesh: ny and nz must be at least 8");
    CubicalMesh m = build_mesh_from_field(
        [params](const PointTI& p) { return metric_at(p, params); }, 2.0 * params.j, dims);
    m.source_params = params;
    return m;
}

MeshDims ResolutionPolicy::resolution_for(double j) {
    MeshDims d;
    d.nx = std::max(32, int(std::ceil(8.0 * j)));
    d.ny = std::max(16, int(std::ceil(4.0 * j)));
    d.nz = 16;
    capped_last_query = false;
    while (int64_t(d.nx) * d.ny * d.nz > max_cells && (d.ny > 16 || d.nx > 32)) {
        // Halve the finest torus direction first; x is halved last so the
        // shear stays resolved as long as possible.
        capped_last_query = true;
        if (d.ny > 16)
            d.ny = std::max(16, d.ny / 2);
        else
            d.nx = std::max(32, d.nx / 2);
    }
    return d;
}

} // namespace syslab
