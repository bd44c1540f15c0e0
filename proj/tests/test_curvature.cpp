#include <doctest.h>

#include <cmath>

#include "syslab/curvature.hpp"

using namespace syslab;

// Closed-form sectional curvatures of the unsmoothed model
// dx^2 + dy^2 + (dz - x dy)^2 in the slope-1 region:
//   K(dx, dy)   = (xhat^2 - 3) / (4 (1 + xhat^2))
//   K(dx, dz)   = 1/4,  K(dy, dz) = 1/4
//   K(f1, f2)   = -3/4 for the orthonormal frame f2 = dy + xhat dz
// so max |K| over all planes is 3/4.

TEST_CASE("sectional curvature matches the nilpotent model") {
    MetricParams p4{4.0, 0.1};
    const double fd = 5e-3;

    for (double x : {0.3, 1.0, 2.5}) {
        const double xh = hat(x, p4);
        const PointTI p{x, 0.37, 0.81};
        const double kxy = sectional_curvature(p, p4, {1, 0, 0}, {0, 1, 0}, fd);
        const double kxz = sectional_curvature(p, p4, {1, 0, 0}, {0, 0, 1}, fd);
        const double kyz = sectional_curvature(p, p4, {0, 1, 0}, {0, 0, 1}, fd);
        CHECK(kxy == doctest::Approx((xh * xh - 3.0) / (4.0 * (1.0 + xh * xh))).epsilon(2e-4));
        CHECK(kxz == doctest::Approx(0.25).epsilon(2e-4));
        CHECK(kyz == doctest::Approx(0.25).epsilon(2e-4));

        const double kframe = sectional_curvature(p, p4, {1, 0, 0}, {0, 1, xh}, fd);
        CHECK(kframe == doctest::Approx(-0.75).epsilon(2e-4));
    }
}

TEST_CASE("max sectional curvature stays within the model bound") {
    MetricParams p2{2.0, 0.1};
    for (double x : {0.2, 0.9, 1.6})
        CHECK(curvature_at({x, 0.1, 0.2}, p2, 5e-3) <= 0.76);
}

TEST_CASE("curvature is independent of j away from the band") {
    MetricParams p2{2.0, 0.1}, p4{4.0, 0.1};
    const PointTI p{1.2, 0.5, 0.5};
    const double k2 = curvature_at(p, p2, 5e-3);
    const double k4 = curvature_at(p, p4, 5e-3);
    CHECK(std::abs(k2 - k4) / k2 < 0.02);
}

TEST_CASE("curvature domain errors") {
    MetricParams p2{2.0, 0.1};
    CHECK_THROWS_AS(curvature_at({0.001, 0.5, 0.5}, p2, 5e-3), std::domain_error);
    CHECK_THROWS_AS(curvature_at({1.0, 0.5, 0.5}, p2, 0.5), std::domain_error);
    CHECK_THROWS_AS(curvature_at({1.0, 0.5, 0.5}, p2, -1e-3), std::domain_error);
}

TEST_CASE("curvature report samples consistently across j") {
    const CurvatureReport r2 = curvature_report({2.0, 0.1}, 6, 5e-3, 42);
    const CurvatureReport r16 = curvature_report({16.0, 0.1}, 6, 5e-3, 42);
    CHECK(r2.sample_count == 6);
    CHECK(r2.max_abs_sectional <= 0.76);
    CHECK(r16.max_abs_sectional <= 0.76);
    CHECK(std::abs(r2.max_abs_sectional - r16.max_abs_sectional) /
              r2.max_abs_sectional <
          0.02);
    CHECK_THROWS_AS(curvature_report({2.0, 0.1}, 0, 5e-3, 1), ValidationError);
}
