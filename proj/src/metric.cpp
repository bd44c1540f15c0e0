#include "syslab/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace syslab {

PointTI PointTI::reduced() const {
    auto wrap = [](double t) {
        double r = t - std::floor(t);
        return (r >= 1.0) ? 0.0 : r;
    };
    return {x, wrap(y), wrap(z)};
}

SymmetricBilinear3 SymmetricBilinear3::inverse() const {
    double d = det();
    if (d == 0.0)
        throw std::domain_error("SymmetricBilinear3: singular tensor");
    SymmetricBilinear3 inv;
    inv.xx = (yy * zz - yz * yz) / d;
    inv.xy = (xz * yz - xy * zz) / d;
    inv.xz = (xy * yz - xz * yy) / d;
    inv.yy = (xx * zz - xz * xz) / d;
    inv.yz = (xy * xz - xx * yz) / d;
    inv.zz = (xx * yy - xy * xy) / d;
    return inv;
}

double hat(double x, const MetricParams& params) {
    params.validate();
    const double j = params.j;
    const double d = params.smoothing_delta;
    if (x < -1e-12 || x > 2.0 * j + 1e-12)
        throw std::domain_error("hat: x outside [0, 2j]");
    x = std::min(std::max(x, 0.0), 2.0 * j);
    const double u = x - j;
    if (d == 0.0 || std::abs(u) >= d)
        return std::min(x, 2.0 * j - x);
    // Even quartic matching |u|, |u|' and |u|'' at u = +-d:
    // p(u) = 3d/8 + 3u^2/(4d) - u^4/(8d^3), so hat = j - p(u).
    const double u2 = u * u;
    const double p = 0.375 * d + 0.75 * u2 / d - 0.125 * u2 * u2 / (d * d * d);
    return j - p;
}

double hat_max(const MetricParams& params) {
    params.validate();
    return params.j - 0.375 * params.smoothing_delta;
}

std::array<std::array<double, 3>, 3> coframe_at(double xhat) {
    return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, -xhat, 1.0}}};
}

SymmetricBilinear3 metric_at(const PointTI& p, const MetricParams& params) {
    const double xh = hat(p.x, params);
    const auto e = coframe_at(xh);
    SymmetricBilinear3 g;
    auto comp = [&](int a, int b) {
        return e[0][a] * e[0][b] + e[1][a] * e[1][b] + e[2][a] * e[2][b];
    };
    g.xx = comp(0, 0);
    g.xy = comp(0, 1);
    g.xz = comp(0, 2);
    g.yy = comp(1, 1);
    g.yz = comp(1, 2);
    g.zz = comp(2, 2);
    return g;
}

namespace {

// Wedge of two coefficient 1-forms into 2-form components.
TwoForm3 wedge(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    TwoForm3 w;
    w.xy = a[0] * b[1] - a[1] * b[0];
    w.xz = a[0] * b[2] - a[2] * b[0];
    w.yz = a[1] * b[2] - a[2] * b[1];
    return w;
}

// Solve the 3x3 system sum_k c_k e^k = target for the coframe
// coefficients of a coordinate 1-form.
std::array<double, 3> in_coframe(const std::array<std::array<double, 3>, 3>& e,
                                 const std::array<double, 3>& target) {
    // Rows of e are the coframe covectors; we need c with c^T e = target.
    double m[3][4];
    for (int col = 0; col < 3; ++col) {
        for (int k = 0; k < 3; ++k)
            m[col][k] = e[k][col];
        m[col][3] = target[col];
    }
    // Gaussian elimination with partial pivoting.
    for (int piv = 0; piv < 3; ++piv) {
        int best = piv;
        for (int r = piv + 1; r < 3; ++r)
            if (std::abs(m[r][piv]) > std::abs(m[best][piv])) best = r;
        for (int c = 0; c < 4; ++c)
            std::swap(m[piv][c], m[best][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == piv) continue;
            double f = m[r][piv] / m[piv][piv];
            for (int c = piv; c < 4; ++c)
                m[r][c] -= f * m[piv][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

} // namespace

TwoForm3 psi_at(const PointTI& p, const MetricParams& params) {
    const double xh = hat(p.x, params);
    const auto e = coframe_at(xh);

    // dz = c1 e1 + c2 e2 + c3 e3 in the orthonormal coframe.
    const auto c = in_coframe(e, {0.0, 0.0, 1.0});
    const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);

    // Star in the coframe: *e1 = e2^e3, *e2 = e3^e1, *e3 = e1^e2.
    const TwoForm3 s1 = wedge(e[1], e[2]);
    const TwoForm3 s2 = wedge(e[2], e[0]);
    const TwoForm3 s3 = wedge(e[0], e[1]);

    TwoForm3 w;
    w.xy = (c[0] * s1.xy + c[1] * s2.xy + c[2] * s3.xy) / norm;
    w.xz = (c[0] * s1.xz + c[1] * s2.xz + c[2] * s3.xz) / norm;
    w.yz = (c[0] * s1.yz + c[1] * s2.yz + c[2] * s3.yz) / norm;
    return w;
}

QuadratureRule gauss_legendre_01(int order) {
    if (order < 1 || order > 32)
        throw ValidationError("gauss_legendre_01: order must be in [1, 32]");
    QuadratureRule q;
    q.order = order;
    const int n = order;
    // Newton iteration on P_n, nodes on [-1, 1], then affine map to [0, 1].
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) { p0 = x; p1 = 0.0; }
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? p0 : p1;
            double pm = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pm) / (x * x - 1.0);
            double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.node[i] = 0.5 * (1.0 - x);
        q.weight[i] = 0.5 * w;
        q.node[n - 1 - i] = 0.5 * (1.0 + x);
        q.weight[n - 1 - i] = 0.5 * w;
    }
    return q;
}

double total_volume(const MetricParams& params, int quadrature_order) {
    params.validate();
    if (quadrature_order < 2)
        throw ValidationError("total_volume: quadrature_order must be >= 2");
    const auto q = gauss_legendre_01(std::min(quadrature_order, 32));
    const double L = 2.0 * params.j;
    const int panels_x = std::max(64, 16 * static_cast<int>(std::ceil(params.j)));
    const int panels_yz = 4;
    const double hx = L / panels_x, hyz = 1.0 / panels_yz;

    double vol = 0.0;
    for (int px = 0; px < panels_x; ++px)
        for (int ax = 0; ax < q.order; ++ax) {
            const double x = (px + q.node[ax]) * hx;
            double slab = 0.0;
            for (int py = 0; py < panels_yz; ++py)
                for (int ay = 0; ay < q.order; ++ay)
                    for (int pz = 0; pz < panels_yz; ++pz)
                        for (int az = 0; az < q.order; ++az) {
                            const PointTI p{x, (py + q.node[ay]) * hyz,
                                            (pz + q.node[az]) * hyz};
                            const double d = metric_at(p, params).det();
                            slab += q.weight[ay] * q.weight[az] * std::sqrt(d);
                        }
            vol += q.weight[ax] * slab * hx * hyz * hyz;
        }
    return vol;
}

double curve_length(std::span<const PointTI> samples, const MetricParams& params) {
    params.validate();
    if (samples.size() < 2)
        throw ValidationError("curve_length: need at least 2 samples");
    double len = 0.0;
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        const PointTI& a = samples[i];
        const PointTI& b = samples[i + 1];
        const std::array<double, 3> d{b.x - a.x, b.y - a.y, b.z - a.z};
        if (std::abs(d[1]) > 0.5 + 1e-9 || std::abs(d[2]) > 0.5 + 1e-9)
            throw ValidationError(
                "curve_length: consecutive samples exceed half a period in y or z");
        const PointTI mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y), 0.5 * (a.z + b.z)};
        const SymmetricBilinear3 g = metric_at(mid.reduced(), params);
        len += std::sqrt(std::max(0.0, g.apply(d, d)));
    }
    return len;
}

} // namespace syslab
