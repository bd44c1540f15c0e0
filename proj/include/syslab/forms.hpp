#pragma once
#include <cstdint>
#include <functional>

#include "syslab/metric.hpp"

namespace syslab {

using TwoFormField = std::function<TwoForm3(const PointTI&)>;

/// A pointwise 2-form field together with the metric it is measured
/// against. Default evaluator is psi.
struct FormFieldSpec {
    MetricParams params;
    TwoFormField evaluator;

    static FormFieldSpec psi(const MetricParams& params) {
        return {params, [params](const PointTI& p) { return psi_at(p, params); }};
    }
};

struct ComassReport {
    double max_value = 0.0;      // best w(u,v) found over all points/planes
    double max_violation = 0.0;  // max_value - 1
    PointTI argmax{};
    int n_points = 0;
    int n_planes = 0;
    bool passed = false;         // max_violation <= tol
};

/// Estimates the comass of the field by sampling points, maximizing
/// w(u, v) over orthonormal pairs at each point: random restarts on the
/// Grassmannian of 2-planes (represented by their metric-unit normals)
/// followed by projected gradient ascent. Passes when max_violation
/// stays within tol.
ComassReport verify_comass(const FormFieldSpec& spec, int n_points, int n_planes,
                           double tol, uint64_t seed);

/// Comass of a single 2-form against a metric, closed form; used as the
/// independent check of the sampling maximizer. In three dimensions
/// every 2-form is simple, so the comass is the norm of the rotated
/// coefficient vector in an orthonormal frame.
double comass_exact(const TwoForm3& w, const SymmetricBilinear3& g);

struct ClosednessReport {
    double max_residual = 0.0;  // |d w| in the single top component
    PointTI argmax{};
    int n_points = 0;
    double fd_step = 0.0;
};

/// Central-difference exterior derivative of the field, sampled outside
/// the smoothing band: residual = |D_x w_yz - D_y w_xz + D_z w_xy|.
ClosednessReport verify_closed(const FormFieldSpec& spec, int n_points,
                               double fd_step, uint64_t seed);

/// Observed order of convergence of the closedness residual under one
/// halving of fd_step. Residuals below the absolute floor count as
/// fully converged and report +infinity.
double closedness_convergence_order(const FormFieldSpec& spec, int n_points,
                                    double fd_step, uint64_t seed,
                                    double floor = 1e-12);

} // namespace syslab
