#include "syslab/forms.hpp"

#include <cmath>
#include <limits>

#include "syslab/rng.hpp"

namespace syslab {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 mat_apply(const std::array<std::array<double, 3>, 3>& m, const Vec3& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

double g_norm(const SymmetricBilinear3& g, const Vec3& v) {
    return std::sqrt(std::max(0.0, g.apply(v, v)));
}

// Euclidean cross product; as a covector it annihilates u and v.
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(a, cross(b, c));
}

// Given a g-unit normal n, build a positively oriented g-orthonormal
// basis (u, v) of its g-orthogonal plane and evaluate w(u, v). The
// result depends only on n, which makes the plane search a problem on
// the 2-sphere of normals.
double plane_value(const TwoForm3& w, const SymmetricBilinear3& g, const Vec3& n) {
    // Seed u with the coordinate axis least aligned with n.
    int axis = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        Vec3 e{0, 0, 0};
        e[k] = 1.0;
        double a = std::abs(g.apply(e, n));
        if (a < best) {
            best = a;
            axis = k;
        }
    }
    Vec3 u{0, 0, 0};
    u[axis] = 1.0;
    double un = g.apply(u, n);
    for (int k = 0; k < 3; ++k) u[k] -= un * n[k];
    double ulen = g_norm(g, u);
    for (int k = 0; k < 3; ++k) u[k] /= ulen;

    // v spans the rest: any vector g-orthogonal to n and u.
    Vec3 e{0, 0, 0};
    e[(axis + 1) % 3] = 1.0;
    Vec3 v = e;
    double vn = g.apply(v, n), vu = g.apply(v, u);
    for (int k = 0; k < 3; ++k) v[k] -= vn * n[k] + vu * u[k];
    double vlen = g_norm(g, v);
    if (vlen < 1e-12) {
        e = {0, 0, 0};
        e[(axis + 2) % 3] = 1.0;
        v = e;
        vn = g.apply(v, n);
        vu = g.apply(v, u);
        for (int k = 0; k < 3; ++k) v[k] -= vn * n[k] + vu * u[k];
        vlen = g_norm(g, v);
    }
    for (int k = 0; k < 3; ++k) v[k] /= vlen;

    if (det3(n, u, v) < 0.0)
        for (int k = 0; k < 3; ++k) v[k] = -v[k];
    return w.eval(u, v);
}

Vec3 g_normalize(const SymmetricBilinear3& g, Vec3 n) {
    double len = g_norm(g, n);
    for (int k = 0; k < 3; ++k) n[k] /= len;
    return n;
}

// Ascent over the sphere of g-unit normals. The objective extends
// linearly in the unnormalized normal, so probing the coordinate
// directions recovers its gradient; the step to the gradient direction
// is verified, then polished with small finite-difference moves.
double ascend(const TwoForm3& w, const SymmetricBilinear3& g, Vec3 n) {
    n = g_normalize(g, n);
    double value = plane_value(w, g, n);

    Vec3 grad{};
    for (int k = 0; k < 3; ++k) {
        Vec3 e{0, 0, 0};
        e[k] = 1.0;
        const double scale = std::sqrt(std::max(1e-300, g.apply(e, e)));
        grad[k] = plane_value(w, g, g_normalize(g, e)) * scale;
    }
    if (std::sqrt(dot(grad, grad)) > 1e-14) {
        const Vec3 cand = g_normalize(g, grad);
        const double cv = plane_value(w, g, cand);
        if (cv > value) {
            n = cand;
            value = cv;
        }
    }

    // Polish: projected finite-difference steps with backtracking.
    const double fd = 1e-6;
    for (int it = 0; it < 4; ++it) {
        Vec3 gr{};
        for (int k = 0; k < 3; ++k) {
            Vec3 np = n, nm = n;
            np[k] += fd;
            nm[k] -= fd;
            gr[k] = (plane_value(w, g, g_normalize(g, np)) -
                     plane_value(w, g, g_normalize(g, nm))) /
                    (2.0 * fd);
        }
        const double glen = std::sqrt(dot(gr, gr));
        if (glen < 1e-12) break;
        double step = 0.5;
        bool improved = false;
        for (int bt = 0; bt < 12; ++bt) {
            Vec3 cand = n;
            for (int k = 0; k < 3; ++k) cand[k] += step * gr[k] / glen;
            cand = g_normalize(g, cand);
            const double cv = plane_value(w, g, cand);
            if (cv > value + 1e-15) {
                n = cand;
                value = cv;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return value;
}

} // namespace

double comass_exact(const TwoForm3& w, const SymmetricBilinear3& g) {
    // |w|_{Lambda^2} for a 2-form in 3d; comass of a simple form equals
    // its norm. Contract with the inverse metric:
    // |w|^2 = 1/2 w_{ij} w_{kl} g^{ik} g^{jl}.
    const auto gi = g.inverse().as_matrix();
    const double W[3][3] = {{0.0, w.xy, w.xz}, {-w.xy, 0.0, w.yz}, {-w.xz, -w.yz, 0.0}};
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int jj = 0; jj < 3; ++jj)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    s += W[i][jj] * W[k][l] * gi[i][k] * gi[jj][l];
    return std::sqrt(std::max(0.0, 0.5 * s));
}

ComassReport verify_comass(const FormFieldSpec& spec, int n_points, int n_planes,
                           double tol, uint64_t seed) {
    spec.params.validate();
    if (n_points < 1 || n_planes < 1)
        throw ValidationError("verify_comass: n_points and n_planes must be >= 1");
    Rng rng(seed);
    const double L = 2.0 * spec.params.j;

    ComassReport rep;
    rep.n_points = n_points;
    rep.n_planes = n_planes;
    rep.max_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_points; ++i) {
        const PointTI p{rng.uniform(0.0, L), rng.uniform(), rng.uniform()};
        const SymmetricBilinear3 g = metric_at(p, spec.params);
        if (!g.positive_definite())
            throw std::runtime_error("verify_comass: metric not positive definite at sample");
        const TwoForm3 w = spec.evaluator(p);
        // Random restarts pick the best starting plane; ascent refines it.
        double start_best = -std::numeric_limits<double>::infinity();
        Vec3 start{0, 0, 1};
        for (int r = 0; r < n_planes; ++r) {
            Vec3 n{rng.gaussian(), rng.gaussian(), rng.gaussian()};
            if (std::sqrt(dot(n, n)) < 1e-8) continue;
            n = g_normalize(g, n);
            const double v = plane_value(w, g, n);
            if (v > start_best) {
                start_best = v;
                start = n;
            }
        }
        const double point_best = std::max(start_best, ascend(w, g, start));
        if (point_best > rep.max_value) {
            rep.max_value = point_best;
            rep.argmax = p;
        }
    }
    rep.max_violation = rep.max_value - 1.0;
    rep.passed = rep.max_violation <= tol;
    return rep;
}

namespace {

double d_residual_at(const FormFieldSpec& spec, const PointTI& p, double h) {
    auto f = [&spec](const PointTI& q) { return spec.evaluator(q); };
    auto sh = [](const PointTI& q, int axis, double d) {
        PointTI r = q;
        (axis == 0 ? r.x : axis == 1 ? r.y : r.z) += d;
        return r;
    };
    const double dyz_dx = (f(sh(p, 0, h)).yz - f(sh(p, 0, -h)).yz) / (2.0 * h);
    const double dxz_dy = (f(sh(p, 1, h)).xz - f(sh(p, 1, -h)).xz) / (2.0 * h);
    const double dxy_dz = (f(sh(p, 2, h)).xy - f(sh(p, 2, -h)).xy) / (2.0 * h);
    return std::abs(dyz_dx - dxz_dy + dxy_dz);
}

PointTI sample_off_band(Rng& rng, const MetricParams& params, double margin) {
    const double j = params.j;
    const double lo = margin;
    const double band_lo = j - params.smoothing_delta - margin;
    const double band_hi = j + params.smoothing_delta + margin;
    const double hi = 2.0 * j - margin;
    // Split the admissible x-range around the band, weight by length.
    const double left = std::max(0.0, band_lo - lo);
    const double right = std::max(0.0, hi - band_hi);
    double x;
    if (left + right <= 0.0) {
        x = j / 2.0;
    } else if (rng.uniform() * (left + right) < left) {
        x = lo + rng.uniform() * left;
    } else {
        x = band_hi + rng.uniform() * right;
    }
    return {x, rng.uniform(), rng.uniform()};
}

} // namespace

ClosednessReport verify_closed(const FormFieldSpec& spec, int n_points, double fd_step,
                               uint64_t seed) {
    spec.params.validate();
    if (!(fd_step > 0.0))
        throw ValidationError("verify_closed: fd_step must be positive");
    Rng rng(seed);
    ClosednessReport rep;
    rep.n_points = n_points;
    rep.fd_step = fd_step;
    const double margin = 2.0 * fd_step;
    for (int i = 0; i < n_points; ++i) {
        const PointTI p = sample_off_band(rng, spec.params, margin);
        const double r = d_residual_at(spec, p, fd_step);
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.argmax = p;
        }
    }
    return rep;
}

double closedness_convergence_order(const FormFieldSpec& spec, int n_points,
                                    double fd_step, uint64_t seed, double floor) {
    const double r1 = verify_closed(spec, n_points, fd_step, seed).max_residual;
    const double r2 = verify_closed(spec, n_points, fd_step / 2.0, seed).max_residual;
    if (r1 < floor && r2 < floor)
        return std::numeric_limits<double>::infinity();
    if (r2 <= 0.0)
        return std::numeric_limits<double>::infinity();
    return std::log2(r1 / r2);
}

} // namespace syslab
