#include "syslab/intersection.hpp"

#include <algorithm>

namespace syslab {

int64_t intersection_number(const Chain& c1, const Chain& c2, const CubicalMesh& mesh) {
    if (c1.dimension != 1 || c2.dimension != 2)
        throw ValidationError("intersection_number: expects a 1-chain and a 2-chain");
    if (c1.mode == CoefMode::Z2 || c2.mode == CoefMode::Z2)
        throw ValidationError("intersection_number: integer coefficients required for signs");

    // The shifted copy of an edge crosses one face: its own axis type,
    // one step ahead in the edge direction, half a cell aside in the
    // transverse directions.
    int64_t total = 0;
    for (const auto& [e, q] : c1.coef) {
        if (q == 0) continue;
        const auto ec = mesh.edge_coord(e);
        int64_t f = -1;
        switch (ec.d) {
            case Axis::X:
                f = mesh.face_index(FaceType::YZ, ec.ix + 1, ec.iy, ec.iz);
                break;
            case Axis::Y:
                f = mesh.face_index(FaceType::XZ, std::min(ec.ix, mesh.dims.nx - 1),
                                    ec.iy + 1, ec.iz);
                break;
            case Axis::Z:
                f = mesh.face_index(FaceType::XY, std::min(ec.ix, mesh.dims.nx - 1),
                                    ec.iy, ec.iz + 1);
                break;
        }
        const auto it = c2.coef.find(f);
        if (it != c2.coef.end()) total += q * it->second;
    }
    return total;
}

} // namespace syslab
