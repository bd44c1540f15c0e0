#include <doctest.h>

#include <cmath>
#include <vector>

#include "syslab/forms.hpp"
#include "syslab/metric.hpp"
#include "syslab/rng.hpp"

using namespace syslab;

namespace {

std::vector<PointTI> z_circle(double x, double y, int n) {
    std::vector<PointTI> pts;
    for (int i = 0; i <= n; ++i) pts.push_back({x, y, double(i) / n});
    return pts;
}

std::vector<PointTI> y_circle(double x, double z, int n) {
    std::vector<PointTI> pts;
    for (int i = 0; i <= n; ++i) pts.push_back({x, double(i) / n, z});
    return pts;
}

} // namespace

TEST_CASE("hat profile") {
    MetricParams p4{4.0, 0.1};

    CHECK(hat(0.0, p4) == doctest::Approx(0.0));
    CHECK(hat(7.0, p4) == doctest::Approx(1.0));
    CHECK(hat(1.5, p4) == doctest::Approx(1.5));

    // Smoothed peak: j - 3 delta / 8. Regression fixture.
    CHECK(hat(4.0, p4) == doctest::Approx(3.9625).epsilon(1e-15));
    CHECK(hat(4.0, p4) <= 4.0);
    CHECK(hat(4.0, p4) >= 4.0 - 0.1);

    SUBCASE("band bounds and symmetry") {
        for (double u = -0.1; u <= 0.1001; u += 0.01) {
            const double v = hat(4.0 + u, p4);
            CHECK(v <= 4.0 + 1e-15);
            CHECK(v >= 3.9 - 1e-15);
            CHECK(v == doctest::Approx(hat(4.0 - u, p4)).epsilon(1e-14));
        }
    }

    SUBCASE("monotone nondecreasing on [0, j]") {
        Rng rng(11);
        for (int i = 0; i < 2000; ++i) {
            double a = rng.uniform(0.0, 4.0), b = rng.uniform(0.0, 4.0);
            if (a > b) std::swap(a, b);
            CHECK(hat(a, p4) <= hat(b, p4) + 1e-14);
        }
    }

    SUBCASE("C2 join at the band edge") {
        // First and second FD derivatives continuous across x = j - delta.
        const double x0 = 4.0 - 0.1, h = 1e-5;
        auto d1 = [&](double x) { return (hat(x + h, p4) - hat(x - h, p4)) / (2 * h); };
        auto d2 = [&](double x) {
            return (hat(x + h, p4) - 2 * hat(x, p4) + hat(x - h, p4)) / (h * h);
        };
        CHECK(d1(x0 - 5 * h) == doctest::Approx(d1(x0 + 5 * h)).epsilon(1e-3));
        CHECK(std::abs(d2(x0 - 5 * h) - d2(x0 + 5 * h)) < 1e-2);
    }

    SUBCASE("zero delta reduces to the exact min") {
        MetricParams sharp{4.0, 0.0};
        CHECK(hat(4.0, sharp) == doctest::Approx(4.0));
        CHECK(hat(3.97, sharp) == doctest::Approx(3.97));
    }

    CHECK_THROWS_AS(hat(-0.5, p4), std::domain_error);
    CHECK_THROWS_AS(hat(8.5, p4), std::domain_error);
    CHECK_THROWS_AS(MetricParams{0.5, 0.1}.validate(), ValidationError);
    CHECK_THROWS_AS((MetricParams{4.0, 2.5}).validate(), ValidationError);
}

TEST_CASE("metric tensor components") {
    MetricParams p4{4.0, 0.1};

    SUBCASE("identity at xhat = 0") {
        const SymmetricBilinear3 g = metric_at({0.0, 0.3, 0.7}, p4);
        CHECK(g.xx == doctest::Approx(1.0));
        CHECK(g.yy == doctest::Approx(1.0));
        CHECK(g.zz == doctest::Approx(1.0));
        CHECK(g.xy == doctest::Approx(0.0));
        CHECK(g.xz == doctest::Approx(0.0));
        CHECK(g.yz == doctest::Approx(0.0));
    }

    SUBCASE("shear block at xhat = 2") {
        const SymmetricBilinear3 g = metric_at({2.0, 0.0, 0.0}, p4);
        CHECK(g.yy == doctest::Approx(5.0));
        CHECK(g.yz == doctest::Approx(-2.0));
        CHECK(g.zz == doctest::Approx(1.0));
        CHECK(g.xx == doctest::Approx(1.0));
    }

    SUBCASE("unit determinant and positive definiteness everywhere") {
        Rng rng(7);
        for (double j : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            MetricParams prm{j, 0.1};
            for (int i = 0; i < 2000; ++i) {
                const PointTI p{rng.uniform(0.0, 2.0 * j), rng.uniform(), rng.uniform()};
                const SymmetricBilinear3 g = metric_at(p, prm);
                CHECK(std::abs(g.det() - 1.0) < 1e-12);
                CHECK(g.positive_definite());
            }
        }
    }
}

TEST_CASE("total volume is 2j") {
    CHECK(total_volume({3.0, 0.1}) == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(total_volume({1.0, 0.1}) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(total_volume({16.0, 0.1}) == doctest::Approx(32.0).epsilon(1e-6));
    CHECK_THROWS_AS(total_volume({2.0, 0.1}, 1), ValidationError);
}

TEST_CASE("curve lengths") {
    MetricParams p4{4.0, 0.1};

    CHECK(curve_length(z_circle(1.3, 0.4, 64), p4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curve_length(z_circle(4.0, 0.9, 64), p4) == doctest::Approx(1.0).epsilon(1e-12));

    // y-circle at xhat = 2 has length sqrt(1 + 4).
    CHECK(curve_length(y_circle(2.0, 0.25, 128), p4) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));

    SUBCASE("degenerate constant curve") {
        std::vector<PointTI> pts(5, PointTI{1.0, 0.5, 0.5});
        CHECK(curve_length(pts, p4) == doctest::Approx(0.0));
    }

    SUBCASE("argument errors") {
        std::vector<PointTI> one{{1.0, 0.0, 0.0}};
        CHECK_THROWS_AS(curve_length(one, p4), ValidationError);
        std::vector<PointTI> jump{{1.0, 0.0, 0.0}, {1.0, 0.8, 0.0}};
        CHECK_THROWS_AS(curve_length(jump, p4), ValidationError);
    }
}

TEST_CASE("calibrating form components through the coframe") {
    MetricParams p2{2.0, 0.1};

    SUBCASE("flat slice: psi = dx^dy") {
        const TwoForm3 w = psi_at({0.0, 0.2, 0.9}, p2);
        CHECK(w.xy == doctest::Approx(1.0));
        CHECK(w.xz == doctest::Approx(0.0));
        CHECK(w.yz == doctest::Approx(0.0));
    }

    SUBCASE("sheared slice xhat = 1") {
        const TwoForm3 w = psi_at({1.0, 0.0, 0.0}, p2);
        CHECK(w.xy == doctest::Approx(std::sqrt(2.0)));
        CHECK(w.xz == doctest::Approx(-1.0 / std::sqrt(2.0)));
        CHECK(w.yz == doctest::Approx(0.0));
    }

    SUBCASE("general component law wxz = -xhat/sqrt(1+xhat^2)") {
        for (double x : {0.5, 1.7, 1.99}) {
            const double xh = hat(x, p2);
            const TwoForm3 w = psi_at({x, 0.0, 0.0}, p2);
            CHECK(w.xy == doctest::Approx(std::sqrt(1 + xh * xh)).epsilon(1e-14));
            CHECK(w.xz == doctest::Approx(-xh / std::sqrt(1 + xh * xh)).epsilon(1e-14));
        }
    }

    SUBCASE("unit comass oracle") {
        Rng rng(3);
        for (int i = 0; i < 500; ++i) {
            const PointTI p{rng.uniform(0.0, 4.0), rng.uniform(), rng.uniform()};
            const SymmetricBilinear3 g = metric_at(p, p2);
            CHECK(comass_exact(psi_at(p, p2), g) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const QuadratureRule q = gauss_legendre_01(4);
    double s = 0.0;
    for (int i = 0; i < q.order; ++i) s += q.weight[i] * std::pow(q.node[i], 7.0);
    CHECK(s == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    double w = 0.0;
    for (int i = 0; i < q.order; ++i) w += q.weight[i];
    CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
}
