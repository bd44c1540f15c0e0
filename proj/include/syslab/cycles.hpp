#pragma once
#include <vector>

#include "syslab/mesh.hpp"

namespace syslab {

struct SystoleResult {
    double value = 0.0;
    Chain witness;
    WindingClass cls;
    double lower_bound_certificate = 0.0;
    MeshDims resolution;
};

/// Shortest closed edge-cycle realizing the winding class (a, b):
/// Dijkstra on the (a, b)-unrolled cover from base vertices to their
/// translates, with early-exit pruning against `upper_bound` (pass
/// +infinity for an unpruned search). Returns value = +infinity when the
/// bound cuts off every candidate. exhaustive=true disables the
/// invariance reduction and source pruning (test oracle mode).
struct ClassCycle {
    double value;
    Chain witness;  // Z2 edge chain
};
ClassCycle shortest_cycle_in_class(const CubicalMesh& mesh, WindingClass cls,
                                   double upper_bound, bool exhaustive = false);

/// Combinatorial estimate of sys_1: minimum over primitive classes with
/// max(|a|, |b|) <= max_winding.
SystoleResult shortest_nontrivial_cycle(const CubicalMesh& mesh, int max_winding = 2);

struct StableNormBounds {
    double lb = 0.0;
    double ub = 0.0;
};

/// Bracket for the stable norm of the target class.
/// ub: best of (i) mesh shortest cycles in class m*target divided by m
/// (pruned by the winding lower bound) and (ii) two-term splittings
/// m*target = alpha + beta with each term measured by the fiber norm
/// sqrt((a - xhat b)^2 + b^2) at its best mesh x-slab (available when
/// the mesh was built from the metric family).
/// lb: best pairing of target with a closed 1-form c dz + c' dy scaled
/// to unit comass over the mesh slabs.
StableNormBounds stable_norm_bounds(const CubicalMesh& mesh, WindingClass target,
                                    int max_multiple);

/// Pairing lower bound for a single class from the closed 1-form family
/// (the certificate attached to systole results).
double dual_one_form_bound(const CubicalMesh& mesh, WindingClass target);

/// Total weight of the chain's edges inside the Dijkstra metric ball of
/// radius r about a vertex of the chain. An edge counts when its
/// midpoint lies within r (min endpoint distance + half weight).
double ball_mass(const CubicalMesh& mesh, const Chain& chain, int64_t center_vertex,
                 double r);

} // namespace syslab
