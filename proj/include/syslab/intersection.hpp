#pragma once
#include "syslab/mesh.hpp"

namespace syslab {

/// Signed count of crossings of a 1-cycle through the faces of a
/// relative 2-cycle. The 1-chain is shifted to dual position (half a
/// cell in every coordinate), so each edge crosses exactly one face of
/// its transverse type; edges on the far x-gridline are perturbed one
/// cell inward. Bilinear, and depends only on the homology classes.
int64_t intersection_number(const Chain& c1, const Chain& c2, const CubicalMesh& mesh);

} // namespace syslab
