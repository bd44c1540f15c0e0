#pragma once
#include "syslab/cycles.hpp"
#include "syslab/forms.hpp"
#include "syslab/mesh.hpp"

namespace syslab {

enum class DualDirection { dz, dy };

/// Minimum-total-face-weight relative 2-cycle separating the chosen
/// periodic direction: the mesh is cut open along one coordinate slice,
/// the two copies become source and sink of the dual lattice graph
/// (nodes = 3-cells, arcs = faces with capacity = face weight), and the
/// min cut is returned as an oriented face chain.
///
/// For the dz direction the result carries a calibration certificate:
/// the pairing of psi with the cut (a Stokes lower bound every
/// dz-separating surface must exceed). Requires the mesh to have been
/// built from the metric family for the certificate to be attached.
SystoleResult min_relative_2cycle(const CubicalMesh& mesh, DualDirection dir);

/// Pairing of the two-form field with an oriented face chain: sum over
/// faces of the 2x2 Gauss integral of the form against the face's
/// coordinate tangents, weighted by the chain coefficient.
double pair_form_chain(const FormFieldSpec& spec, const CubicalMesh& mesh,
                       const Chain& faces);

/// Discrete coarea bound: sum over x-slabs of hx times the shortest
/// z-separating (y-winding) cycle in the slab's fiber graph, with fiber
/// edge weights induced from face weights. Any 2-chain in the dz-class
/// has total weight at least this sum.
double coarea_slab_bound(const CubicalMesh& mesh);

} // namespace syslab
