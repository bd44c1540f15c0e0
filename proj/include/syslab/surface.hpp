#pragma once
#include <functional>
#include <utility>

#include "syslab/forms.hpp"
#include "syslab/metric.hpp"

namespace syslab {

/// Parameterized surface patch [0,1]^2 -> T^2 x I. The map may return
/// unreduced y, z (winding bookkeeping). When `tangents` is absent the
/// pairing falls back to central differences in parameter space.
struct SurfacePatch {
    std::function<PointTI(double, double)> map;
    std::function<std::pair<std::array<double, 3>, std::array<double, 3>>(double, double)>
        tangents;  // optional analytic du, dv
    int orientation = +1;
    int nu = 64;
    int nv = 64;
};

struct PairingResult {
    double value = 0.0;
    bool rank_warning = false;  // set when many samples had a degenerate Jacobian
};

/// Integral of the 2-form over the patch, midpoint rule on the
/// parameter grid, orientation-signed. Requires at least an 8x8 grid.
PairingResult pair_form_surface(const FormFieldSpec& spec, const SurfacePatch& patch);

/// Riemannian area of the patch under the metric of `params`.
double patch_area(const MetricParams& params, const SurfacePatch& patch);

/// area(patch) - integral of the form; zero exactly on calibrated
/// patches, nonnegative for a unit-comass form.
double calibration_defect(const FormFieldSpec& spec, const SurfacePatch& patch);

/// The z = z0 slice spanning all of [0, 2j] x S^1_y (the calibrated
/// competitor of the dz-dual class).
SurfacePatch make_z_slice_patch(const MetricParams& params, double z0, int nu, int nv);

/// The y = y0 slice spanned by (x, z).
SurfacePatch make_y_slice_patch(const MetricParams& params, double y0, int nu, int nv);

/// The torus fiber x = x0 spanned by (y, z).
SurfacePatch make_fiber_patch(double x0, int nu, int nv);

/// Sheared slice z = z0 + slope * y over [0, 2j] x S^1_y.
SurfacePatch make_sheared_patch(const MetricParams& params, double z0, double slope,
                                int nu, int nv);

} // namespace syslab
