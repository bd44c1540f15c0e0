#include "syslab/surface.hpp"

#include <cmath>

namespace syslab {

namespace {

using Vec3 = std::array<double, 3>;

std::pair<Vec3, Vec3> numeric_tangents(const SurfacePatch& patch, double u, double v) {
    const double h = 1e-5;
    auto at = [&](double uu, double vv) { return patch.map(uu, vv); };
    const PointTI up = at(u + h, v), um = at(u - h, v);
    const PointTI vp = at(u, v + h), vm = at(u, v - h);
    const Vec3 tu{(up.x - um.x) / (2 * h), (up.y - um.y) / (2 * h), (up.z - um.z) / (2 * h)};
    const Vec3 tv{(vp.x - vm.x) / (2 * h), (vp.y - vm.y) / (2 * h), (vp.z - vm.z) / (2 * h)};
    return {tu, tv};
}

template <typename CellFn>
PairingResult integrate_cells(const SurfacePatch& patch, CellFn&& cell_value) {
    if (patch.nu < 8 || patch.nv < 8)
        throw ValidationError("surface patch: grid resolution must be at least 8x8");
    const double du = 1.0 / patch.nu, dv = 1.0 / patch.nv;
    PairingResult out;
    int degenerate = 0;
    double acc = 0.0;
    for (int iu = 0; iu < patch.nu; ++iu)
        for (int iv = 0; iv < patch.nv; ++iv) {
            const double u = (iu + 0.5) * du, v = (iv + 0.5) * dv;
            const PointTI p = patch.map(u, v);
            const auto [tu, tv] =
                patch.tangents ? patch.tangents(u, v) : numeric_tangents(patch, u, v);
            const double cross0 = tu[1] * tv[2] - tu[2] * tv[1];
            const double cross1 = tu[2] * tv[0] - tu[0] * tv[2];
            const double cross2 = tu[0] * tv[1] - tu[1] * tv[0];
            if (cross0 * cross0 + cross1 * cross1 + cross2 * cross2 < 1e-24)
                ++degenerate;
            acc += cell_value(p, tu, tv);
        }
    out.value = acc * du * dv * patch.orientation;
    out.rank_warning = degenerate > (patch.nu * patch.nv) / 100;
    return out;
}

} // namespace

PairingResult pair_form_surface(const FormFieldSpec& spec, const SurfacePatch& patch) {
    spec.params.validate();
    return integrate_cells(patch, [&](const PointTI& p, const Vec3& tu, const Vec3& tv) {
        return spec.evaluator(p).eval(tu, tv);
    });
}

double patch_area(const MetricParams& params, const SurfacePatch& patch) {
    params.validate();
    auto res = integrate_cells(patch, [&](const PointTI& p, const Vec3& tu, const Vec3& tv) {
        const SymmetricBilinear3 g = metric_at(p.reduced(), params);
        const double E = g.apply(tu, tu), F = g.apply(tu, tv), G = g.apply(tv, tv);
        return std::sqrt(std::max(0.0, E * G - F * F));
    });
    // Area is orientation-free.
    return std::abs(res.value);
}

double calibration_defect(const FormFieldSpec& spec, const SurfacePatch& patch) {
    return patch_area(spec.params, patch) - pair_form_surface(spec, patch).value;
}

SurfacePatch make_z_slice_patch(const MetricParams& params, double z0, int nu, int nv) {
    const double L = 2.0 * params.j;
    SurfacePatch patch;
    patch.map = [L, z0](double u, double v) { return PointTI{L * u, v, z0}; };
    patch.tangents = [L](double, double) {
        return std::pair<Vec3, Vec3>{{L, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    };
    patch.nu = nu;
    patch.nv = nv;
    return patch;
}

SurfacePatch make_y_slice_patch(const MetricParams& params, double y0, int nu, int nv) {
    const double L = 2.0 * params.j;
    SurfacePatch patch;
    patch.map = [L, y0](double u, double v) { return PointTI{L * u, y0, v}; };
    patch.tangents = [L](double, double) {
        return std::pair<Vec3, Vec3>{{L, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    };
    patch.nu = nu;
    patch.nv = nv;
    return patch;
}

SurfacePatch make_fiber_patch(double x0, int nu, int nv) {
    SurfacePatch patch;
    patch.map = [x0](double u, double v) { return PointTI{x0, u, v}; };
    patch.tangents = [](double, double) {
        return std::pair<Vec3, Vec3>{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    };
    patch.nu = nu;
    patch.nv = nv;
    return patch;
}

SurfacePatch make_sheared_patch(const MetricParams& params, double z0, double slope,
                                int nu, int nv) {
    const double L = 2.0 * params.j;
    SurfacePatch patch;
    patch.map = [L, z0, slope](double u, double v) {
        return PointTI{L * u, v, z0 + slope * v};
    };
    patch.tangents = [L, slope](double, double) {
        return std::pair<Vec3, Vec3>{{L, 0.0, 0.0}, {0.0, 1.0, slope}};
    };
    patch.nu = nu;
    patch.nv = nv;
    return patch;
}

} // namespace syslab
