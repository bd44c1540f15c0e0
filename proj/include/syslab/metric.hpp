#pragma once
#include <array>
#include <functional>
#include <span>

#include "syslab/errors.hpp"

namespace syslab {

/// Parameters of the two-circle metric family on T^2 x [0, 2j].
///
/// j is the construction scale. The profile min(x, 2j-x) has a kink at
/// x = j; it is replaced by a C^2 interpolant on the band |x - j| <
/// smoothing_delta so that curvature is defined everywhere. All
/// length/area identities then hold up to O(smoothing_delta) inside the
/// band and exactly outside it.
struct MetricParams {
    double j = 1.0;
    double smoothing_delta = 0.1;

    void validate() const {
        if (!(j >= 1.0))
            throw ValidationError("MetricParams: j must be >= 1");
        if (!(smoothing_delta >= 0.0 && smoothing_delta < j / 2.0))
            throw ValidationError("MetricParams: smoothing_delta must lie in [0, j/2)");
    }
};

/// A point of T^2 x I. x in [0, 2j]; y, z are circle coordinates of
/// period 1 and may be carried unreduced for winding bookkeeping.
struct PointTI {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    /// Canonical representative with y, z in [0, 1).
    PointTI reduced() const;
};

/// Symmetric bilinear form on coordinates (x, y, z).
struct SymmetricBilinear3 {
    double xx = 1.0, xy = 0.0, xz = 0.0, yy = 1.0, yz = 0.0, zz = 1.0;

    double apply(const std::array<double, 3>& u, const std::array<double, 3>& v) const {
        return xx * u[0] * v[0] + yy * u[1] * v[1] + zz * u[2] * v[2] +
               xy * (u[0] * v[1] + u[1] * v[0]) + xz * (u[0] * v[2] + u[2] * v[0]) +
               yz * (u[1] * v[2] + u[2] * v[1]);
    }

    double det() const {
        return xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) +
               xz * (xy * yz - yy * xz);
    }

    bool positive_definite() const {
        return xx > 0.0 && (xx * yy - xy * xy) > 0.0 && det() > 0.0;
    }

    std::array<std::array<double, 3>, 3> as_matrix() const {
        return {{{xx, xy, xz}, {xy, yy, yz}, {xz, yz, zz}}};
    }

    SymmetricBilinear3 inverse() const;
};

/// 2-form coefficients: w = xy dx^dy + xz dx^dz + yz dy^dz.
struct TwoForm3 {
    double xy = 0.0, xz = 0.0, yz = 0.0;

    double eval(const std::array<double, 3>& u, const std::array<double, 3>& v) const {
        return xy * (u[0] * v[1] - u[1] * v[0]) + xz * (u[0] * v[2] - u[2] * v[0]) +
               yz * (u[1] * v[2] - u[2] * v[1]);
    }
};

/// Smoothed profile of min(x, 2j - x). C^2 everywhere, equal to the
/// exact min outside the smoothing band, monotone nondecreasing on
/// [0, j], with values in [j - smoothing_delta, j] inside the band.
/// Throws std::domain_error for x outside [0, 2j].
double hat(double x, const MetricParams& params);

/// Largest value the profile attains: j - 3 delta / 8 (j when delta = 0).
double hat_max(const MetricParams& params);

/// Orthonormal coframe rows (e1, e2, e3) at profile value xhat:
/// e1 = dx, e2 = dy, e3 = dz - xhat dy, as coefficient triples.
std::array<std::array<double, 3>, 3> coframe_at(double xhat);

/// Metric tensor assembled from the coframe: g = sum_k e^k (x) e^k.
/// Components: g_xx = 1, g_yy = 1 + xhat^2, g_yz = -xhat, g_zz = 1.
/// det g = 1 identically.
SymmetricBilinear3 metric_at(const PointTI& p, const MetricParams& params);

/// The calibrating 2-form psi = *dz / |dz|, derived through the
/// orthonormal coframe (not from precomputed component formulas):
/// dz is expanded in the coframe, starred there, and pushed back to
/// coordinates. Orientation: dx^dy^dz positive.
TwoForm3 psi_at(const PointTI& p, const MetricParams& params);

/// Riemannian volume of T^2 x [0, 2j]: composite Gauss-Legendre
/// quadrature of sqrt(det g). Equals 2j for this family.
double total_volume(const MetricParams& params, int quadrature_order = 8);

/// Length of a piecewise-linear curve: sum of sqrt(g(mid)(d, d)) over
/// segments, with the metric read at segment midpoints. Sample
/// coordinates are taken as-is (carry winding in unreduced y, z);
/// consecutive samples must stay within half a period in y and z.
double curve_length(std::span<const PointTI> samples, const MetricParams& params);

/// Pointwise metric callback used by mesh builders; lets tests feed
/// control metrics (e.g. the flat product metric) through the same
/// machinery.
using MetricField = std::function<SymmetricBilinear3(const PointTI&)>;

/// Gauss-Legendre nodes/weights on [0, 1].
struct QuadratureRule {
    std::array<double, 32> node{};
    std::array<double, 32> weight{};
    int order = 0;
};
QuadratureRule gauss_legendre_01(int order);

} // namespace syslab
