#include "syslab/sweep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "syslab/cycles.hpp"
#include "syslab/mincut.hpp"
#include "syslab/surface.hpp"

namespace syslab {

std::vector<SweepRecord> run_sweep(const SweepOptions& opts) {
    if (opts.j_values.empty())
        throw ValidationError("sweep: empty j list");
    for (size_t i = 0; i < opts.j_values.size(); ++i) {
        if (opts.j_values[i] < 1.0)
            throw ValidationError("sweep: j values must be >= 1");
        if (i > 0 && opts.j_values[i] <= opts.j_values[i - 1])
            throw ValidationError("sweep: j values must be strictly increasing");
    }

    std::vector<SweepRecord> records;
    ResolutionPolicy policy = opts.policy;
    for (double j : opts.j_values) {
        try {
            MetricParams params{j, opts.smoothing_delta};
            params.validate();
            SweepRecord rec;
            rec.j = j;
            rec.res = policy.resolution_for(j);

            rec.vol = total_volume(params);

            const CubicalMesh mesh = build_mesh(params, rec.res);
            const SystoleResult s1 = shortest_nontrivial_cycle(mesh, opts.max_winding);
            rec.sys1 = s1.value;

            const StableNormBounds st =
                stable_norm_bounds(mesh, WindingClass{1, 0}, opts.max_multiple);
            rec.stsys1_lb = st.lb;
            rec.stsys1_ub = st.ub;

            rec.sys2rel_dz = min_relative_2cycle(mesh, DualDirection::dz).value;
            rec.sys2rel_dy = min_relative_2cycle(mesh, DualDirection::dy).value;

            const FormFieldSpec psi = FormFieldSpec::psi(params);
            const SurfacePatch zslice =
                make_z_slice_patch(params, 0.0, std::max(256, 8 * rec.res.nx), 16);
            rec.calib_area = pair_form_surface(psi, zslice).value;

            rec.ratio_eq2 = rec.vol / (rec.sys1 * rec.sys2rel_dz);
            rec.gap_eq5 = rec.sys1 / rec.stsys1_ub;
            records.push_back(rec);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep aborted at j=" + std::to_string(j) + ": " +
                                     e.what());
        }
    }
    return records;
}

} // namespace syslab
