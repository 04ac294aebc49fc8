#pragma once

#include <cmath>
#include <random>

#include "minkval/ops.hpp"

namespace minkval {

template <class T>
PolytopeT<T> make_box(const Vec<T>& lo, const Vec<T>& hi) {
    int n = (int)lo.size();
    std::vector<Vec<T>> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec<T> p(n);
        for (int i = 0; i < n; ++i) p[i] = (mask >> i & 1) ? hi[i] : lo[i];
        pts.push_back(std::move(p));
    }
    return convex_hull_t(pts);
}

template <class T>
PolytopeT<T> make_unit_cube(int n) {
    return make_box(vec_zero<T>(n), Vec<T>(n, T(1)));
}

template <class T>
PolytopeT<T> make_segment(const Vec<T>& a, const Vec<T>& b) {
    return convex_hull_t<T>({a, b});
}

template <class T>
PolytopeT<T> make_point(const Vec<T>& a) {
    return convex_hull_t<T>({a});
}

/// conv{0, e_1, ..., e_n}.
template <class T>
PolytopeT<T> make_standard_simplex(int n) {
    std::vector<Vec<T>> pts = {vec_zero<T>(n)};
    for (int i = 0; i < n; ++i) {
        Vec<T> e = vec_zero<T>(n);
        e[i] = T(1);
        pts.push_back(std::move(e));
    }
    return convex_hull_t(pts);
}

/// Inscribed m-gon of the circle of radius r with vertices *exactly on the
/// circle*: each vertex is r (1-t^2, 2t)/(1+t^2) for a small-denominator
/// rational t close to tan(theta/2). Keeps products/tube formulas fully
/// rational while approximating the disk to O(1/m^2).
inline PolytopeT<Rat> rational_circle_gon(int m, const Rat& r, long max_den = 4096) {
    if (m < 3) throw GeometryError("need at least 3 directions");
    std::vector<Vec<Rat>> pts;
    for (int k = 0; k < m; ++k) {
        double theta = 2.0 * M_PI * k / m;
        // Map to (-pi/2, pi/2] so |tan(theta/2)| <= 1 and negate if needed.
        int sign = 1;
        double phi = theta;
        if (theta > M_PI / 2 && theta <= 3 * M_PI / 2) {
            phi = theta - M_PI;
            sign = -1;
        } else if (theta > 3 * M_PI / 2) {
            phi = theta - 2 * M_PI;
        }
        Rat t = rat_approx(std::tan(phi / 2), max_den);
        Rat den = Rat(1) + t * t;
        Rat x = (Rat(1) - t * t) / den, y = Rat(2) * t / den;
        pts.push_back({Rat(sign) * r * x, Rat(sign) * r * y});
    }
    return convex_hull_t(pts);
}

/// Inscribed polytope of the sphere of radius r with rational vertices
/// exactly on the sphere (stereographic rational points), m >= 4 directions
/// spread by a Fibonacci lattice.
inline PolytopeT<Rat> rational_sphere_polytope(int m, const Rat& r, long max_den = 512) {
    if (m < 4) throw GeometryError("need at least 4 directions");
    std::vector<Vec<Rat>> pts;
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < m; ++k) {
        double z = 1.0 - 2.0 * (k + 0.5) / m;
        double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = ga * k;
        double x = rho * std::cos(phi), y = rho * std::sin(phi);
        int flip = z < 0 ? -1 : 1;
        double zz = flip * z;
        // Stereographic parameters from the pole opposite the point.
        Rat p = rat_approx(x / (1.0 + zz), max_den);
        Rat q = rat_approx((flip * y) / (1.0 + zz), max_den);
        Rat den = Rat(1) + p * p + q * q;
        Vec<Rat> u = {Rat(2) * p / den, Rat(2) * q / den, (Rat(1) - p * p - q * q) / den};
        if (flip < 0) { u[1] = -u[1]; u[2] = -u[2]; }
        pts.push_back({r * u[0], r * u[1], r * u[2]});
    }
    return convex_hull_t(pts);
}

/// Ball surrogate in dimension 1..3 (rational): segment, gon, or sphere hull.
inline PolytopeT<Rat> rational_ball_surrogate(int n, int m, const Rat& r) {
    if (n == 1) return make_segment<Rat>({-r}, {r});
    if (n == 2) return rational_circle_gon(m, r);
    if (n == 3) return rational_sphere_polytope(m, r);
    throw GeometryError("ball surrogate only for n <= 3");
}

/// Random convex polygon: hull of k integer points in [-range, range]^2.
inline PolytopeT<Rat> random_lattice_polygon(std::mt19937_64& rng, int k = 8, long range = 8) {
    std::uniform_int_distribution<long> U(-range, range);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Vec<Rat>> pts;
        for (int i = 0; i < k; ++i) pts.push_back({Rat(U(rng)), Rat(U(rng))});
        auto P = convex_hull_t(pts);
        if (P.d == 2) return P;
    }
    throw GeometryError("failed to sample a full-dimensional polygon");
}

inline PolytopeT<Rat> random_lattice_polytope(std::mt19937_64& rng, int n, int k = 10, long range = 8) {
    std::uniform_int_distribution<long> U(-range, range);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Vec<Rat>> pts;
        for (int i = 0; i < k; ++i) {
            Vec<Rat> p(n);
            for (int j = 0; j < n; ++j) p[j] = Rat(U(rng));
            pts.push_back(std::move(p));
        }
        auto P = convex_hull_t(pts);
        if (P.d == n) return P;
    }
    throw GeometryError("failed to sample a full-dimensional polytope");
}

/// Lossless float -> rational conversion (doubles are dyadic rationals).
inline PolytopeT<Rat> rationalize(const PolytopeT<double>& P) {
    std::vector<Vec<Rat>> pts;
    for (const auto& v : P.verts) {
        Vec<Rat> q;
        for (double x : v) q.push_back(rat_of_double(x));
        pts.push_back(std::move(q));
    }
    return convex_hull_t(pts);
}

inline PolytopeT<double> to_float(const PolytopeT<Rat>& P) {
    std::vector<Vec<double>> pts;
    for (const auto& v : P.verts) pts.push_back(vec_to_double(v));
    return convex_hull_t(pts);
}

template <class T>
PolytopeT<T> regular_gon(int m, double r = 1.0) {
    std::vector<Vec<T>> pts;
    for (int k = 0; k < m; ++k) {
        double th = 2 * M_PI * k / m;
        pts.push_back({ScalarTraits<T>::from_double(r * std::cos(th)),
                       ScalarTraits<T>::from_double(r * std::sin(th))});
    }
    return convex_hull_t(pts);
}

}  // namespace minkval
