#include "syslab/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace syslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nodes of the (a, b)-unrolled cover: (sheet_y, sheet_z, base vertex).
struct Cover {
    const CubicalMesh& mesh;
    int ky_lo, ky_hi, kz_lo, kz_hi;
    int64_t nv;

    Cover(const CubicalMesh& m, WindingClass cls) : mesh(m) {
        ky_lo = std::min(0, cls.b) - 1;
        ky_hi = std::max(0, cls.b) + 1;
        kz_lo = std::min(0, cls.a) - 1;
        kz_hi = std::max(0, cls.a) + 1;
        nv = m.n_vertices();
    }
    int sheets_y() const { return ky_hi - ky_lo + 1; }
    int sheets_z() const { return kz_hi - kz_lo + 1; }
    int64_t size() const { return int64_t(sheets_y()) * sheets_z() * nv; }
    int64_t node(int ky, int kz, int64_t v) const {
        return (int64_t(ky - ky_lo) * sheets_z() + (kz - kz_lo)) * nv + v;
    }
};

struct HeapItem {
    double dist;
    int64_t node;
    bool operator>(const HeapItem& o) const { return dist > o.dist; }
};

struct SignedEdge {
    int64_t edge;
    int sign;  // +1 when traversed along the edge orientation
};

// One Dijkstra run from a base vertex on sheet (0,0) to its (b, a)
// translate. Expansion is pruned at `bound`. Fills the witness as
// signed traversals of base edges on success.
double cover_dijkstra(const CubicalMesh& m, const Cover& cov, int64_t source_v,
                      WindingClass cls, double bound, std::vector<SignedEdge>* witness) {
    const int64_t N = cov.size();
    std::vector<double> dist(N, kInf);
    std::vector<int64_t> parent_edge;
    std::vector<int64_t> parent_node;
    std::vector<int8_t> parent_sign;
    if (witness) {
        parent_edge.assign(N, -1);
        parent_node.assign(N, -1);
        parent_sign.assign(N, 0);
    }
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> pq;
    const int64_t start = cov.node(0, 0, source_v);
    const int64_t goal = cov.node(cls.b, cls.a, source_v);
    dist[start] = 0.0;
    pq.push({0.0, start});

    const int ny = m.dims.ny, nz = m.dims.nz, nx = m.dims.nx;
    while (!pq.empty()) {
        const auto [d, node] = pq.top();
        pq.pop();
        if (d > dist[node]) continue;
        if (node == goal) break;
        if (d >= bound) continue;

        const int64_t v = node % cov.nv;
        const int64_t sheet = node / cov.nv;
        const int kz = int(sheet % cov.sheets_z()) + cov.kz_lo;
        const int ky = int(sheet / cov.sheets_z()) + cov.ky_lo;
        const auto vc = m.vertex_coord(v);

        auto relax = [&](int64_t edge, int sgn, int nky, int nkz, int nix, int niy, int niz) {
            if (nky < cov.ky_lo || nky > cov.ky_hi || nkz < cov.kz_lo || nkz > cov.kz_hi)
                return;
            const double nd = d + m.edge_weight[edge];
            if (nd >= bound) return;
            const int64_t nn = cov.node(nky, nkz, m.vertex_index(nix, niy, niz));
            if (nd < dist[nn] - 1e-18) {
                dist[nn] = nd;
                if (witness) {
                    parent_edge[nn] = edge;
                    parent_node[nn] = node;
                    parent_sign[nn] = int8_t(sgn);
                }
                pq.push({nd, nn});
            }
        };

        // x neighbors
        if (vc.ix + 1 <= nx)
            relax(m.edge_index(Axis::X, vc.ix, vc.iy, vc.iz), +1, ky, kz, vc.ix + 1, vc.iy, vc.iz);
        if (vc.ix - 1 >= 0)
            relax(m.edge_index(Axis::X, vc.ix - 1, vc.iy, vc.iz), -1, ky, kz, vc.ix - 1, vc.iy, vc.iz);
        // y neighbors (sheet shifts on wrap)
        relax(m.edge_index(Axis::Y, vc.ix, vc.iy, vc.iz), +1, ky + (vc.iy + 1 == ny ? 1 : 0), kz,
              vc.ix, (vc.iy + 1) % ny, vc.iz);
        relax(m.edge_index(Axis::Y, vc.ix, vc.iy - 1, vc.iz), -1, ky - (vc.iy == 0 ? 1 : 0), kz,
              vc.ix, (vc.iy + ny - 1) % ny, vc.iz);
        // z neighbors
        relax(m.edge_index(Axis::Z, vc.ix, vc.iy, vc.iz), +1, ky, kz + (vc.iz + 1 == nz ? 1 : 0),
              vc.ix, vc.iy, (vc.iz + 1) % nz);
        relax(m.edge_index(Axis::Z, vc.ix, vc.iy, vc.iz - 1), -1, ky, kz - (vc.iz == 0 ? 1 : 0),
              vc.ix, vc.iy, (vc.iz + nz - 1) % nz);
    }

    if (dist[goal] >= bound || dist[goal] == kInf) return kInf;
    if (witness) {
        witness->clear();
        for (int64_t n = goal; n != start && n >= 0; n = parent_node[n])
            witness->push_back({parent_edge[n], parent_sign[n]});
    }
    return dist[goal];
}

// Per-class winding lower bound: any cycle in class (a, b) uses at
// least |a| * nz z-edges and |b| * ny y-edges.
double winding_lower_bound(const CubicalMesh& m, WindingClass cls) {
    auto min_weight = [&](Axis d) {
        const int64_t base = m.edge_index(d, 0, 0, 0);
        const int64_t n = m.n_edges(d);
        double mn = kInf;
        for (int64_t i = 0; i < n; ++i) mn = std::min(mn, m.edge_weight[base + i]);
        return mn;
    };
    double lb = 0.0;
    if (cls.a != 0) lb += std::abs(cls.a) * m.dims.nz * min_weight(Axis::Z);
    if (cls.b != 0) lb += std::abs(cls.b) * m.dims.ny * min_weight(Axis::Y);
    return lb;
}

std::vector<int64_t> class_sources(const CubicalMesh& m, bool exhaustive) {
    std::vector<int64_t> sources;
    if (!exhaustive && m.translation_invariant_weights()) {
        for (int ix = 0; ix <= m.dims.nx; ++ix)
            sources.push_back(m.vertex_index(ix, 0, 0));
    } else {
        sources.resize(m.n_vertices());
        std::iota(sources.begin(), sources.end(), 0);
    }
    return sources;
}

Chain edges_to_chain(const std::vector<SignedEdge>& edges) {
    Chain c;
    c.dimension = 1;
    c.mode = CoefMode::Z;
    for (const SignedEdge& se : edges) c.add(se.edge, se.sign);
    return c;
}

bool lexicographically_before(const Chain& a, const Chain& b) {
    auto ia = a.coef.begin(), ib = b.coef.begin();
    for (; ia != a.coef.end() && ib != b.coef.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
    }
    return a.coef.size() < b.coef.size();
}

} // namespace

ClassCycle shortest_cycle_in_class(const CubicalMesh& mesh, WindingClass cls,
                                   double upper_bound, bool exhaustive) {
    if (cls.trivial())
        throw ValidationError("shortest_cycle_in_class: class must be nontrivial");
    const Cover cov(mesh, cls);
    const double class_lb = winding_lower_bound(mesh, cls);
    double best = upper_bound;
    std::vector<SignedEdge> best_edges;

    for (int64_t src : class_sources(mesh, exhaustive)) {
        std::vector<SignedEdge> edges;
        const double d = cover_dijkstra(mesh, cov, src, cls, best + 1e-12, &edges);
        if (d < best - 1e-12) {
            best = d;
            best_edges = std::move(edges);
        } else if (std::abs(d - best) <= 1e-12 && !edges.empty()) {
            Chain cand = edges_to_chain(edges);
            Chain cur = edges_to_chain(best_edges);
            if (best_edges.empty() || lexicographically_before(cand, cur)) {
                best = std::min(best, d);
                best_edges = std::move(edges);
            }
        }
        // The winding bound is tight for shear-free slabs; no later source
        // can improve on it.
        if (!exhaustive && best <= class_lb + 1e-12 && !best_edges.empty()) break;
    }
    return {best, edges_to_chain(best_edges)};
}

SystoleResult shortest_nontrivial_cycle(const CubicalMesh& mesh, int max_winding) {
    if (max_winding < 1)
        throw ValidationError("shortest_nontrivial_cycle: max_winding must be >= 1");

    // Canonical primitive class representatives: (0,1) and (a,b) with
    // a >= 1, gcd-reduced; the sign of b distinguishes mirror classes.
    std::vector<WindingClass> classes;
    classes.push_back({0, 1});
    for (int a = 1; a <= max_winding; ++a)
        for (int b = -max_winding; b <= max_winding; ++b)
            if (std::gcd(a, std::abs(b)) == 1) classes.push_back({a, b});

    SystoleResult out;
    out.resolution = mesh.dims;
    out.value = kInf;
    for (const auto& cls : classes) {
        // Skip classes whose winding bound already exceeds the incumbent.
        if (winding_lower_bound(mesh, cls) >= out.value - 1e-12 && !out.witness.empty())
            continue;
        ClassCycle cc = shortest_cycle_in_class(mesh, cls, out.value + 1e-9);
        if (cc.value < out.value - 1e-12 ||
            (std::abs(cc.value - out.value) <= 1e-12 && !cc.witness.empty() &&
             (out.witness.empty() || lexicographically_before(cc.witness, out.witness)))) {
            out.value = cc.value;
            out.witness = std::move(cc.witness);
            out.cls = cls;
        }
    }
    if (!std::isfinite(out.value))
        throw std::runtime_error("shortest_nontrivial_cycle: no cycle found");
    out.lower_bound_certificate = dual_one_form_bound(mesh, out.cls);
    return out;
}

namespace {

// xhat profile along the mesh gridlines, recovered from the metric
// family when available, else from the y-edge weights (w_y / hy =
// sqrt(1 + xhat^2) for two-circle meshes, = 1 for flat controls).
std::vector<double> slab_xhat(const CubicalMesh& m) {
    std::vector<double> xh(m.dims.nx + 1, 0.0);
    for (int ix = 0; ix <= m.dims.nx; ++ix) {
        if (m.source_params) {
            xh[ix] = hat(ix * m.hx, *m.source_params);
        } else {
            const double wy = m.edge_weight[m.edge_index(Axis::Y, ix, 0, 0)] / m.hy;
            xh[ix] = std::sqrt(std::max(0.0, wy * wy - 1.0));
        }
    }
    return xh;
}

// Fiber norm of class (a, b) at the best slab: the closed geodesic in
// the torus fiber at xhat has length sqrt((a - xhat b)^2 + b^2).
double fiber_norm(const std::vector<double>& xh, int a, int b) {
    double best = kInf;
    for (double x : xh) {
        const double da = a - x * b;
        best = std::min(best, std::sqrt(da * da + double(b) * b));
    }
    return best;
}

} // namespace

double dual_one_form_bound(const CubicalMesh& mesh, WindingClass target) {
    if (target.trivial())
        throw ValidationError("dual_one_form_bound: target class must be nonzero");
    // theta = c dz + c' dy has squared dual norm c^2 + (c' + xhat c)^2;
    // over xhat in [0, X] the max sits at an endpoint. Pairing with the
    // class is a c + b c'. Scan directions and keep the best certified
    // ratio.
    const auto xh = slab_xhat(mesh);
    double X = 0.0;
    for (double x : xh) X = std::max(X, x);
    if (mesh.source_params) X = std::max(X, hat_max(*mesh.source_params));

    double best = 0.0;
    const int steps = 4096;
    for (int i = 0; i < steps; ++i) {
        const double phi = 2.0 * 3.14159265358979323846 * i / steps;
        const double c = std::cos(phi), cp = std::sin(phi);
        const double q0 = c * c + cp * cp;
        const double qX = c * c + (cp + X * c) * (cp + X * c);
        const double comass = std::sqrt(std::max(q0, qX));
        const double pairing = target.a * c + target.b * cp;
        if (comass > 0.0) best = std::max(best, pairing / comass);
    }
    return best;
}

StableNormBounds stable_norm_bounds(const CubicalMesh& mesh, WindingClass target,
                                    int max_multiple) {
    if (target.trivial())
        throw ValidationError("stable_norm_bounds: target class must be nonzero");
    if (max_multiple < 1)
        throw ValidationError("stable_norm_bounds: max_multiple must be >= 1");

    const auto xh = slab_xhat(mesh);
    StableNormBounds out;
    out.ub = kInf;

    for (int mult = 1; mult <= max_multiple; ++mult) {
        const int A = mult * target.a, B = mult * target.b;
        // Splitting routes first: they seed the Dijkstra bound.
        out.ub = std::min(out.ub, fiber_norm(xh, A, B) / mult);
        const int span = 2 * std::max(std::abs(A), std::abs(B)) + 2;
        for (int p = -span; p <= span; ++p)
            for (int q = -span; q <= span; ++q) {
                if (p == 0 && q == 0) continue;
                if (p == A && q == B) continue;
                const double n1 = fiber_norm(xh, p, q);
                if (n1 >= out.ub * mult) continue;
                const double n2 = fiber_norm(xh, A - p, B - q);
                out.ub = std::min(out.ub, (n1 + n2) / mult);
            }
        // Mesh shortest cycle in the multiple class, skipped when the
        // winding bound cannot beat the incumbent.
        const WindingClass mcls{A, B};
        if (winding_lower_bound(mesh, mcls) < out.ub * mult - 1e-12) {
            const ClassCycle cc = shortest_cycle_in_class(mesh, mcls, out.ub * mult + 1e-9);
            out.ub = std::min(out.ub, cc.value / mult);
        }
    }

    out.lb = dual_one_form_bound(mesh, target);
    return out;
}

double ball_mass(const CubicalMesh& mesh, const Chain& chain, int64_t center_vertex,
                 double r) {
    if (chain.dimension != 1)
        throw ValidationError("ball_mass: chain must be one-dimensional");
    if (!(r > 0.0) || r >= 1.0)
        throw ValidationError("ball_mass: radius must lie in (0, 1)");

    bool on_chain = false;
    for (const auto& [e, c] : chain.coef) {
        if (c == 0) continue;
        const auto [t, h] = mesh.edge_vertices(e);
        if (t == center_vertex || h == center_vertex) {
            on_chain = true;
            break;
        }
    }
    if (!on_chain)
        throw ValidationError("ball_mass: center vertex does not lie on the chain");

    // Dijkstra ball, pruned at r.
    std::vector<double> dist(mesh.n_vertices(), kInf);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> pq;
    dist[center_vertex] = 0.0;
    pq.push({0.0, center_vertex});
    const int nx = mesh.dims.nx, ny = mesh.dims.ny, nz = mesh.dims.nz;
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (d > r) continue;
        const auto vc = mesh.vertex_coord(v);
        auto relax = [&](int64_t edge, int nix, int niy, int niz) {
            const double nd = d + mesh.edge_weight[edge];
            if (nd > r) return;
            const int64_t nv = mesh.vertex_index(nix, niy, niz);
            if (nd < dist[nv] - 1e-18) {
                dist[nv] = nd;
                pq.push({nd, nv});
            }
        };
        if (vc.ix + 1 <= nx) relax(mesh.edge_index(Axis::X, vc.ix, vc.iy, vc.iz), vc.ix + 1, vc.iy, vc.iz);
        if (vc.ix - 1 >= 0) relax(mesh.edge_index(Axis::X, vc.ix - 1, vc.iy, vc.iz), vc.ix - 1, vc.iy, vc.iz);
        relax(mesh.edge_index(Axis::Y, vc.ix, vc.iy, vc.iz), vc.ix, (vc.iy + 1) % ny, vc.iz);
        relax(mesh.edge_index(Axis::Y, vc.ix, vc.iy - 1, vc.iz), vc.ix, (vc.iy + ny - 1) % ny, vc.iz);
        relax(mesh.edge_index(Axis::Z, vc.ix, vc.iy, vc.iz), vc.ix, vc.iy, (vc.iz + 1) % nz);
        relax(mesh.edge_index(Axis::Z, vc.ix, vc.iy, vc.iz - 1), vc.ix, vc.iy, (vc.iz + nz - 1) % nz);
    }

    double mass = 0.0;
    for (const auto& [e, c] : chain.coef) {
        if (c == 0) continue;
        const auto [t, h] = mesh.edge_vertices(e);
        const double d = std::min(dist[t], dist[h]);
        const double w = mesh.edge_weight[e];
        if (d + 0.5 * w <= r) mass += std::abs(double(c)) * w;
    }
    return mass;
}

} // namespace syslab
