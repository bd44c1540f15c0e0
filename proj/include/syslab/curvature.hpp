#pragma once
#include <cstdint>

#include "syslab/metric.hpp"

namespace syslab {

struct CurvatureReport {
    double max_abs_sectional = 0.0;
    int sample_count = 0;
    double fd_step = 0.0;
};

/// Sectional curvature of the plane spanned by u, v at p, sign
/// convention K > 0 on the round sphere. Christoffel symbols and the
/// Riemann tensor are assembled from nested second-order central
/// differences of metric_at.
double sectional_curvature(const PointTI& p, const MetricParams& params,
                           const std::array<double, 3>& u,
                           const std::array<double, 3>& v, double fd_step);

/// Max |K| over the three coordinate planes plus a fixed set of 16
/// pseudo-random 2-planes. Requires p at least fd_step from the ends of
/// the x-interval and fd_step in (0, 0.1].
double curvature_at(const PointTI& p, const MetricParams& params, double fd_step);

/// Samples curvature_at over n points spread across x (outside the
/// smoothing band, away from the x-boundary; the smallest-x sample is
/// pinned so reports at different j probe matching geometry). y, z
/// positions are drawn from the seed.
CurvatureReport curvature_report(const MetricParams& params, int n_samples,
                                 double fd_step, uint64_t seed);

} // namespace syslab
