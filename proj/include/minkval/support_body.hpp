#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>

#include "minkval/bodies.hpp"
#include "minkval/ops.hpp"

namespace minkval {

/// 1-homogeneous function on R^n \ {0} with C^2 data: h, its gradient, and
/// the ambient Hessian of the 1-homogeneous extension (which annihilates u).
/// Not necessarily convex; SupportBody wraps a convex one.
struct HomogeneousFn {
    int n = 2;
    std::function<double(const Vec<double>&)> h;
    std::function<Vec<double>(const Vec<double>&)> grad;
    std::function<Mat<double>(const Vec<double>&)> hess;
};

inline HomogeneousFn hfn_ball(int n, double r) {
    HomogeneousFn f;
    f.n = n;
    f.h = [r](const Vec<double>& u) { return r * norm(u); };
    f.grad = [r, n](const Vec<double>& u) {
        double nu = norm(u);
        Vec<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = r * u[i] / nu;
        return g;
    };
    f.hess = [r, n](const Vec<double>& u) {
        double nu = norm(u);
        Mat<double> H(n, Vec<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                H[i][j] = r / nu * ((i == j ? 1.0 : 0.0) - u[i] * u[j] / (nu * nu));
        return H;
    };
    return f;
}

inline HomogeneousFn hfn_ellipsoid(const Vec<double>& semi) {
    int n = (int)semi.size();
    Vec<double> a2(n);
    for (int i = 0; i < n; ++i) a2[i] = semi[i] * semi[i];
    HomogeneousFn f;
    f.n = n;
    f.h = [a2, n](const Vec<double>& u) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += a2[i] * u[i] * u[i];
        return std::sqrt(s);
    };
    f.grad = [a2, n](const Vec<double>& u) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += a2[i] * u[i] * u[i];
        double h = std::sqrt(s);
        Vec<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = a2[i] * u[i] / h;
        return g;
    };
    f.hess = [a2, n](const Vec<double>& u) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += a2[i] * u[i] * u[i];
        double h = std::sqrt(s);
        Mat<double> H(n, Vec<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                H[i][j] = (i == j ? a2[i] / h : 0.0) - a2[i] * u[i] * a2[j] * u[j] / (h * h * h);
        return H;
    };
    return f;
}

/// h_P + eps |u|: support function of a polytope smoothed by a small ball.
/// The gradient picks the supporting vertex (a.e. unique); the Hessian is
/// the ball part a.e.
inline HomogeneousFn hfn_smoothed_polytope(const PolytopeT<double>& P, double eps) {
    int n = P.n;
    auto verts = std::make_shared<std::vector<Vec<double>>>(P.verts);
    HomogeneousFn f;
    f.n = n;
    f.h = [verts, eps](const Vec<double>& u) {
        double best = -1e300;
        for (const auto& v : *verts) best = std::max(best, dot(u, v));
        return best + eps * norm(u);
    };
    f.grad = [verts, eps, n](const Vec<double>& u) {
        double best = -1e300;
        const Vec<double>* arg = nullptr;
        for (const auto& v : *verts) {
            double s = dot(u, v);
            if (s > best) { best = s; arg = &v; }
        }
        double nu = norm(u);
        Vec<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = (*arg)[i] + eps * u[i] / nu;
        return g;
    };
    auto ball = hfn_ball(n, eps);
    f.hess = ball.hess;
    return f;
}

inline HomogeneousFn hfn_sum(const HomogeneousFn& a, const HomogeneousFn& b) {
    HomogeneousFn f;
    f.n = a.n;
    f.h = [a, b](const Vec<double>& u) { return a.h(u) + b.h(u); };
    f.grad = [a, b](const Vec<double>& u) { return add(a.grad(u), b.grad(u)); };
    f.hess = [a, b](const Vec<double>& u) {
        auto H = a.hess(u), G = b.hess(u);
        for (size_t i = 0; i < H.size(); ++i)
            for (size_t j = 0; j < H.size(); ++j) H[i][j] += G[i][j];
        return H;
    };
    return f;
}

inline HomogeneousFn hfn_scale(const HomogeneousFn& a, double c) {
    HomogeneousFn f;
    f.n = a.n;
    f.h = [a, c](const Vec<double>& u) { return c * a.h(u); };
    f.grad = [a, c](const Vec<double>& u) { return scale(a.grad(u), c); };
    f.hess = [a, c](const Vec<double>& u) {
        auto H = a.hess(u);
        for (auto& row : H)
            for (auto& x : row) x *= c;
        return H;
    };
    return f;
}

/// Planar test function h(theta) = cos(k theta) |u| (not convex for k >= 2);
/// exercise input for the difference decomposition.
inline HomogeneousFn hfn_cosk(int k) {
    HomogeneousFn f;
    f.n = 2;
    f.h = [k](const Vec<double>& u) {
        double th = std::atan2(u[1], u[0]);
        return std::cos(k * th) * norm(u);
    };
    f.grad = [k](const Vec<double>& u) {
        double th = std::atan2(u[1], u[0]);
        double r = norm(u);
        // h(r,theta) = r c(theta); grad in polar: (c, c') basis (e_r, e_th)
        double c = std::cos(k * th), cp = -k * std::sin(k * th);
        Vec<double> er = {u[0] / r, u[1] / r}, et = {-u[1] / r, u[0] / r};
        return add(scale(er, c), scale(et, cp));
    };
    f.hess = [k](const Vec<double>& u) {
        double th = std::atan2(u[1], u[0]);
        double r = norm(u);
        double c = std::cos(k * th), cpp = -k * k * std::cos(k * th);
        double val = (c + cpp) / r;  // tangential second derivative of the extension
        Vec<double> et = {-u[1] / r, u[0] / r};
        Mat<double> H(2, Vec<double>(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) H[i][j] = val * et[i] * et[j];
        return H;
    };
    return f;
}

// ---------------------------------------------------------------------------

/// Direction grids used for validation and inscribed polytopes.
inline std::vector<Vec<double>> direction_grid_2d(int m) {
    std::vector<Vec<double>> g;
    for (int k = 0; k < m; ++k) {
        double th = 2 * M_PI * k / m;
        g.push_back({std::cos(th), std::sin(th)});
    }
    return g;
}

/// Icosphere vertices (12, 42, 162, 642, 2562 for level 0..4).
inline std::vector<Vec<double>> direction_grid_3d(int level) {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec<double>> v = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& p : v) p = normalized(p);
    std::vector<std::array<int, 3>> f = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = mid.find({key.first, key.second});
            if (it != mid.end()) return it->second;
            Vec<double> m = normalized(add(v[a], v[b]));
            v.push_back(m);
            int id = (int)v.size() - 1;
            mid[{key.first, key.second}] = id;
            return id;
        };
        std::vector<std::array<int, 3>> nf;
        for (auto& t : f) {
            int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
            nf.push_back({t[0], ab, ca});
            nf.push_back({t[1], bc, ab});
            nf.push_back({t[2], ca, bc});
            nf.push_back({ab, bc, ca});
        }
        f = std::move(nf);
    }
    return v;
}

inline std::vector<Vec<double>> default_direction_grid(int n) {
    return n == 2 ? direction_grid_2d(720) : direction_grid_3d(4);
}

// ---------------------------------------------------------------------------

/// Orthonormal basis of u-perp.
inline std::vector<Vec<double>> tangent_basis(const Vec<double>& u) {
    int n = (int)u.size();
    Vec<double> un = normalized(u);
    if (n == 2) return {Vec<double>{-un[1], un[0]}};
    // n == 3
    Vec<double> a = std::abs(un[0]) < 0.9 ? Vec<double>{1, 0, 0} : Vec<double>{0, 1, 0};
    Vec<double> t1 = sub(a, scale(un, dot(a, un)));
    t1 = normalized(t1);
    Vec<double> t2 = {un[1] * t1[2] - un[2] * t1[1], un[2] * t1[0] - un[0] * t1[2],
                      un[0] * t1[1] - un[1] * t1[0]};
    return {t1, t2};
}

/// Eigenvalue range of the tangential restriction of H at unit u.
inline std::pair<double, double> tangent_hessian_range(const Mat<double>& H, const Vec<double>& u) {
    auto tb = tangent_basis(u);
    if (tb.size() == 1) {
        double v = dot(tb[0], mat_apply(H, tb[0]));
        return {v, v};
    }
    double a = dot(tb[0], mat_apply(H, tb[0]));
    double b = dot(tb[0], mat_apply(H, tb[1]));
    double c = dot(tb[1], mat_apply(H, tb[1]));
    double tr = a + c, disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
    return {(tr - disc) / 2, (tr + disc) / 2};
}

/// Smooth convex body given by support-function evaluators.
class SupportBody {
  public:
    SupportBody(HomogeneousFn fn, std::string preset) : fn_(std::move(fn)), preset_(std::move(preset)) {}

    static SupportBody ball(int n, double r) { return SupportBody(hfn_ball(n, r), "ball"); }
    static SupportBody ellipsoid(const Vec<double>& semi) {
        return SupportBody(hfn_ellipsoid(semi), "ellipsoid");
    }
    static SupportBody smoothed_polytope(const PolytopeT<double>& P, double eps) {
        return SupportBody(hfn_smoothed_polytope(P, eps), "smoothpoly");
    }

    int dim() const { return fn_.n; }
    const std::string& preset() const { return preset_; }
    const HomogeneousFn& fn() const { return fn_; }

    double h(const Vec<double>& u) const { return fn_.h(u); }
    Vec<double> grad(const Vec<double>& u) const { return fn_.grad(u); }
    Mat<double> hess(const Vec<double>& u) const { return fn_.hess(u); }

    /// max over the grid of |h|, |grad|, and tangent Hessian magnitude:
    /// a C^2-norm estimate on the sphere.
    double c2_norm_estimate(const std::vector<Vec<double>>& grid) const {
        double m = 0;
        for (const auto& u : grid) {
            m = std::max(m, std::abs(fn_.h(u)));
            m = std::max(m, norm(fn_.grad(u)));
            auto [lo, hi] = tangent_hessian_range(fn_.hess(u), u);
            m = std::max(m, std::max(std::abs(lo), std::abs(hi)));
        }
        return m;
    }

  private:
    HomogeneousFn fn_;
    std::string preset_;
};

struct GradientPointResult {
    Vec<double> point;
    bool unique = true;  // false at (near-)flat directions
};

/// Boundary point where u supports the body: grad h(u).
inline GradientPointResult gradient_point(const SupportBody& body, const Vec<double>& u,
                                          double flat_tol = 1e-12) {
    if (norm(u) == 0) throw GeometryError("gradient_point: zero direction");
    GradientPointResult r;
    r.point = body.grad(u);
    auto [lo, hi] = tangent_hessian_range(body.hess(u), normalized(u));
    r.unique = lo > flat_tol;
    return r;
}

struct CurvatureRange {
    double kmin = 0, kmax = 0;
};

/// Principal-curvature range of sum_i w_i A_i over a direction grid.
/// Curvatures are reciprocals of the tangent-Hessian eigenvalues (radii).
inline CurvatureRange curvature_range(const std::vector<const SupportBody*>& bodies,
                                      const std::vector<double>& weights,
                                      const std::vector<Vec<double>>& grid) {
    if (bodies.empty() || bodies.size() != weights.size())
        throw GeometryError("curvature_range: bodies/weights mismatch");
    double rmin = 1e300, rmax = 0;
    int n = bodies[0]->dim();
    for (const auto& u : grid) {
        Mat<double> H(n, Vec<double>(n, 0.0));
        for (size_t i = 0; i < bodies.size(); ++i) {
            auto Hi = bodies[i]->hess(u);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) H[r][c] += weights[i] * Hi[r][c];
        }
        auto [lo, hi] = tangent_hessian_range(H, u);
        if (lo <= 1e-12) throw GeometryError("curvature_range: not strictly convex on grid");
        rmin = std::min(rmin, lo);
        rmax = std::max(rmax, hi);
    }
    return {1.0 / rmax, 1.0 / rmin};
}

struct DifferenceDecomposition {
    SupportBody a_prime;   // h + T |u|
    SupportBody a_second;  // ball of radius T
    double T = 0;
};

/// Writes a C^2 1-homogeneous h as a difference of two support functions:
/// h = (h + T h_D) - T h_D with the smallest grid-validated T (doubling then
/// bisection) making h + T h_D convex with margin.
inline DifferenceDecomposition decompose_difference(const HomogeneousFn& fn,
                                                    const std::vector<Vec<double>>& grid,
                                                    double margin = 1e-8) {
    auto min_eig = [&](double T) {
        double m = 1e300;
        for (const auto& u : grid) {
            auto H = fn.hess(u);
            auto [lo, hi] = tangent_hessian_range(H, u);
            (void)hi;
            m = std::min(m, lo + T);  // ball Hessian restricted to u-perp at |u|=1 is I
        }
        return m;
    };
    for (const auto& u : grid)
        if (!std::isfinite(fn.h(u)) || !std::isfinite(min_eig(0.0)))
            throw GeometryError("decompose_difference: unbounded Hessian estimate");
    double T = 0;
    if (min_eig(0.0) < margin) {
        double lo = 0, hi = 1;
        while (min_eig(hi) < margin) {
            hi *= 2;
            if (hi > 1e12) throw GeometryError("decompose_difference: unbounded Hessian estimate");
        }
        for (int it = 0; it < 60; ++it) {
            double mid = (lo + hi) / 2;
            (min_eig(mid) >= margin ? hi : lo) = mid;
        }
        T = hi;
    }
    DifferenceDecomposition dd{
        SupportBody(T > 0 ? hfn_sum(fn, hfn_ball(fn.n, T)) : fn, "custom"),
        SupportBody(hfn_ball(fn.n, std::max(T, 0.0)), "ball"), T};
    return dd;
}

/// Hull of gradient points: an inscribed polytope converging to the body as
/// the direction set densifies.
inline PolytopeT<double> inscribed_polytope(const SupportBody& body,
                                            const std::vector<Vec<double>>& dirs) {
    if ((int)dirs.size() < body.dim() + 1)
        throw GeometryError("inscribed_polytope: need at least n+1 directions");
    std::vector<Vec<double>> pts;
    for (const auto& u : dirs) pts.push_back(body.grad(u));
    auto P = convex_hull_t(pts);
    if (P.d != body.dim()) throw GeometryError("inscribed_polytope: degenerate direction set");
    return P;
}

/// Same, with vertices converted losslessly to rationals (dyadic), so the
/// downstream hull/volume pipeline stays exact.
inline PolytopeT<Rat> inscribed_polytope_rational(const SupportBody& body,
                                                  const std::vector<Vec<double>>& dirs) {
    auto P = inscribed_polytope(body, dirs);
    std::vector<Vec<Rat>> pts;
    for (const auto& v : P.verts) {
        Vec<Rat> q;
        for (double x : v) q.push_back(rat_of_double(x));
        pts.push_back(std::move(q));
    }
    return convex_hull_t(pts);
}

}  // namespace minkval
