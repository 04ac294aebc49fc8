#pragma once

#include <array>
#include <functional>
#include <optional>

#include "minkval/lp.hpp"
#include "minkval/polytope.hpp"

namespace minkval {

struct EmptyIntersectionError : GeometryError {
    EmptyIntersectionError() : GeometryError("empty halfspace intersection") {}
};
struct UnboundedError : GeometryError {
    UnboundedError() : GeometryError("unbounded halfspace intersection") {}
};

// ---------------------------------------------------------------------------
// Volume and measures

/// d-dimensional volume in intrinsic coordinates (of the chart). For
/// full-dimensional polytopes this is the Lebesgue volume.
template <class T>
T intrinsic_volume_scalar(const PolytopeT<T>& P) {
    int d = P.d;
    if (d == 0) return T(0);
    if (d == 1) {
        T len = P.iverts[1][0] - P.iverts[0][0];
        return ScalarTraits<T>::sign(len) >= 0 ? len : -len;
    }
    T fact(1);
    for (int i = 2; i <= d; ++i) fact *= T(i);
    T vol(0);
    for (const auto& simplex : P.tri) {
        Mat<T> M;
        for (const auto& p : simplex) M.push_back(sub(p, P.ipoint));
        T dt = det(M);
        vol += (ScalarTraits<T>::sign(dt) >= 0 ? dt : -dt);
    }
    return vol / fact;
}

/// n-dimensional volume (0 for lower-dimensional polytopes). Exact in
/// rational mode: cone of the stored interior point over the boundary
/// triangulation.
template <class T>
T volume_t(const PolytopeT<T>& P) {
    if (P.d < P.n) return T(0);
    return intrinsic_volume_scalar(P);
}

/// j-dimensional Lebesgue measure of a (possibly degenerate) polytope,
/// j = intrinsic dimension. Involves a Gram-determinant square root, so the
/// result is a double.
template <class T>
double measure_jd(const PolytopeT<T>& P) {
    if (P.d == 0) return 1.0;  // counting measure of a point (vol_0)
    double base = to_double(intrinsic_volume_scalar(P));
    if (P.d == P.n) return base;
    Mat<double> G(P.d, Vec<double>(P.d));
    for (int i = 0; i < P.d; ++i)
        for (int j = 0; j < P.d; ++j) G[i][j] = to_double(dot(P.basis[i], P.basis[j]));
    return base * std::sqrt(std::abs(det(G)));
}

// ---------------------------------------------------------------------------
// Support / membership

template <class T>
struct SupportResult {
    T value;
    std::vector<int> verts;  // vertex ids attaining the max
};

template <class T>
SupportResult<T> support_eval_t(const PolytopeT<T>& P, const Vec<T>& u) {
    bool allzero = true;
    for (const auto& x : u)
        if (ScalarTraits<T>::sign(x) != 0) allzero = false;
    if (allzero) throw GeometryError("support direction must be nonzero");
    SupportResult<T> r;
    r.value = dot(u, P.verts[0]);
    r.verts = {0};
    for (int i = 1; i < (int)P.verts.size(); ++i) {
        T v = dot(u, P.verts[i]);
        int s = ScalarTraits<T>::sign(v - r.value);
        if (s > 0) { r.value = v; r.verts = {i}; }
        else if (s == 0) r.verts.push_back(i);
    }
    return r;
}

/// Intrinsic chart coordinates of an ambient point; nullopt if the point is
/// off the affine hull.
template <class T>
std::optional<Vec<T>> chart_coords(const PolytopeT<T>& P, const Vec<T>& x) {
    if (P.d == P.n) return x;
    Vec<T> dx = sub(x, P.origin);
    if (P.d == 0) {
        for (const auto& c : dx)
            if (ScalarTraits<T>::sign(c) != 0) return std::nullopt;
        return Vec<T>{};
    }
    Mat<T> G(P.d, Vec<T>(P.d));
    Vec<T> rhs(P.d);
    for (int i = 0; i < P.d; ++i) {
        for (int j = 0; j < P.d; ++j) G[i][j] = dot(P.basis[i], P.basis[j]);
        rhs[i] = dot(P.basis[i], dx);
    }
    Vec<T> y;
    if (!solve(G, rhs, y)) return std::nullopt;
    Vec<T> back = P.to_ambient(y);
    for (int j = 0; j < P.n; ++j)
        if (ScalarTraits<T>::sign(back[j] - x[j]) != 0) return std::nullopt;
    return y;
}

template <class T>
bool contains_t(const PolytopeT<T>& P, const Vec<T>& x) {
    auto y = chart_coords(P, x);
    if (!y) return false;
    if (P.d == 0) return true;
    for (const auto& f : P.ifacets)
        if (ScalarTraits<T>::sign(dot(f.a, *y) - f.b) > 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// H-representation in ambient coordinates

template <class T>
struct HRep {
    std::vector<std::pair<Vec<T>, T>> eq;    // <a,x> = b (affine hull)
    std::vector<std::pair<Vec<T>, T>> ineq;  // <a,x> <= b
};

template <class T>
HRep<T> ambient_hrep(const PolytopeT<T>& P) {
    HRep<T> H;
    if (P.d < P.n) {
        Mat<T> B = P.basis.empty() ? Mat<T>{} : P.basis;
        Mat<T> rows;
        for (const auto& v : B) rows.push_back(v);
        if (rows.empty()) rows.push_back(vec_zero<T>(P.n));
        for (auto& nu : null_space(rows)) {
            T b = dot(nu, P.d == 0 ? P.verts[0] : P.origin);
            H.eq.push_back({std::move(nu), b});
        }
    }
    if (P.d >= 1) {
        // Lift intrinsic facets: y = M (x - origin) with M = G^{-1} B^T.
        if (P.d == P.n) {
            for (const auto& f : P.ifacets) H.ineq.push_back({f.a, f.b});
        } else {
            Mat<T> G(P.d, Vec<T>(P.d));
            for (int i = 0; i < P.d; ++i)
                for (int j = 0; j < P.d; ++j) G[i][j] = dot(P.basis[i], P.basis[j]);
            for (const auto& f : P.ifacets) {
                Vec<T> w;
                if (!solve(G, f.a, w)) throw GeometryError("gram solve failed");
                // ambient normal = B^T w
                Vec<T> a = vec_zero<T>(P.n);
                for (int i = 0; i < P.d; ++i)
                    for (int j = 0; j < P.n; ++j) a[j] += w[i] * P.basis[i][j];
                T b = f.b + dot(a, P.origin);
                H.ineq.push_back({std::move(a), b});
            }
        }
    }
    return H;
}

// ---------------------------------------------------------------------------
// Hull-based constructions

template <class T>
PolytopeT<T> minkowski_sum_t(const PolytopeT<T>& P, const PolytopeT<T>& Q) {
    if (P.n != Q.n) throw GeometryError("dimension mismatch in minkowski_sum");
    std::vector<Vec<T>> cand;
    if (P.n == 2 && P.d == 2 && Q.d == 2 && P.lattice_built && Q.lattice_built) {
        // Edge-vector merge: O(v) candidates instead of v^2.
        auto chain = [](const PolytopeT<T>& A) {
            int lo = 0;
            for (int i = 1; i < (int)A.iverts.size(); ++i) {
                const auto &v = A.iverts[i], &w = A.iverts[lo];
                if (v[1] < w[1] || (v[1] == w[1] && v[0] < w[0])) lo = i;
            }
            int m = (int)A.iverts.size();
            std::vector<Vec<T>> edges;
            for (int k = 0; k < m; ++k) {
                int i = (lo + k) % m, j = (lo + k + 1) % m;
                edges.push_back(sub(A.iverts[j], A.iverts[i]));
            }
            return std::make_pair(A.iverts[lo], edges);
        };
        auto [p0, e1] = chain(P);
        auto [q0, e2] = chain(Q);
        auto angle_less = [](const Vec<T>& a, const Vec<T>& b) {
            auto half = [](const Vec<T>& v) {
                int sy = ScalarTraits<T>::sign(v[1]);
                if (sy > 0) return 0;
                if (sy < 0) return 1;
                return ScalarTraits<T>::sign(v[0]) > 0 ? 0 : 1;
            };
            int ha = half(a), hb = half(b);
            if (ha != hb) return ha < hb;
            return ScalarTraits<T>::sign(a[0] * b[1] - a[1] * b[0]) > 0;
        };
        std::vector<Vec<T>> edges;
        std::merge(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(edges), angle_less);
        Vec<T> cur = add(p0, q0);
        cand.push_back(cur);
        for (const auto& e : edges) {
            cur = add(cur, e);
            cand.push_back(cur);
        }
    } else {
        cand.reserve(P.verts.size() * Q.verts.size());
        for (const auto& v : P.verts)
            for (const auto& w : Q.verts) cand.push_back(add(v, w));
    }
    return convex_hull_t(cand);
}

template <class T>
PolytopeT<T> scale_t(const PolytopeT<T>& P, const T& c) {
    std::vector<Vec<T>> pts;
    for (const auto& v : P.verts) pts.push_back(scale(v, c));
    return convex_hull_t(pts);
}

template <class T>
PolytopeT<T> translate_t(const PolytopeT<T>& P, const Vec<T>& b) {
    std::vector<Vec<T>> pts;
    for (const auto& v : P.verts) pts.push_back(add(v, b));
    return convex_hull_t(pts);
}

template <class T>
PolytopeT<T> affine_image_t(const PolytopeT<T>& P, const Mat<T>& M, const Vec<T>& b) {
    if ((int)M[0].size() != P.n) throw GeometryError("matrix/polytope dimension mismatch");
    std::vector<Vec<T>> pts;
    for (const auto& v : P.verts) pts.push_back(add(mat_apply(M, v), b));
    return convex_hull_t(pts);
}

/// Reflection -P.
template <class T>
PolytopeT<T> reflect_t(const PolytopeT<T>& P) {
    std::vector<Vec<T>> pts;
    for (const auto& v : P.verts) pts.push_back(neg(v));
    return convex_hull_t(pts);
}

/// Delta_m(K) + (A_1 x ... x A_m) in R^{m n}: hull of (k+a_1, ..., k+a_m).
template <class T>
PolytopeT<T> diagonal_embed_t(const PolytopeT<T>& K, const std::vector<const PolytopeT<T>*>& bodies) {
    int n = K.n;
    int m = (int)bodies.size();
    if (m < 1) throw GeometryError("diagonal_embed needs at least one body");
    for (auto* b : bodies)
        if (b->n != n) throw GeometryError("diagonal_embed dimension mismatch");
    if (m * n > kMaxDim) throw GeometryError("diagonal_embed exceeds the dimension cap 6");
    std::vector<Vec<T>> cand;
    std::vector<size_t> idx(m, 0);
    for (const auto& k : K.verts) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            Vec<T> p;
            p.reserve(m * n);
            for (int i = 0; i < m; ++i) {
                const auto& a = bodies[i]->verts[idx[i]];
                for (int j = 0; j < n; ++j) p.push_back(k[j] + a[j]);
            }
            cand.push_back(std::move(p));
            int i = 0;
            while (i < m && ++idx[i] == bodies[i]->verts.size()) idx[i++] = 0;
            if (i == m) break;
        }
    }
    return convex_hull_t(cand);
}

// ---------------------------------------------------------------------------
// Halfspace intersection (dual hull) and polytope intersection

/// Vertex enumeration of a bounded full-dimensional intersection.
/// hint, when given, must be strictly interior.
template <class T>
PolytopeT<T> halfspace_intersection_t(std::vector<std::pair<Vec<T>, T>> hs,
                                      std::optional<Vec<T>> hint = std::nullopt) {
    if (hs.empty()) throw UnboundedError();
    int n = (int)hs[0].first.size();
    Vec<T> x0;
    if (hint) {
        x0 = *hint;
        for (const auto& [a, b] : hs)
            if (ScalarTraits<T>::sign(dot(a, x0) - b) >= 0)
                throw GeometryError("hint is not strictly interior");
    } else {
        auto [t, x] = max_slack_point(hs, n);
        if (ScalarTraits<T>::sign(t) < 0) throw EmptyIntersectionError();
        if (ScalarTraits<T>::sign(t) == 0) throw GeometryError("halfspace intersection is lower-dimensional");
        x0 = x;
    }
    // Dual points a/(b - <a,x0>).
    std::vector<Vec<T>> dual;
    for (const auto& [a, b] : hs) {
        T s = b - dot(a, x0);
        T inv = T(1) / s;
        dual.push_back(scale(a, inv));
    }
    PolytopeT<T> D = convex_hull_t(dual);
    if (D.d < n) throw UnboundedError();
    std::vector<Vec<T>> verts;
    for (const auto& f : D.ifacets) {
        if (ScalarTraits<T>::sign(f.b) <= 0) throw UnboundedError();
        T inv = T(1) / f.b;
        verts.push_back(add(scale(f.a, inv), x0));
    }
    return convex_hull_t(verts);
}

/// Exact intersection of two polytopes; handles lower-dimensional results.
/// Returns nullopt when empty.
template <class T>
std::optional<PolytopeT<T>> intersect_t(const PolytopeT<T>& P, const PolytopeT<T>& Q) {
    if (P.n != Q.n) throw GeometryError("dimension mismatch in intersection");
    int n = P.n;
    auto H1 = ambient_hrep(P), H2 = ambient_hrep(Q);
    std::vector<std::pair<Vec<T>, T>> eq = H1.eq, ineq = H1.ineq;
    eq.insert(eq.end(), H2.eq.begin(), H2.eq.end());
    ineq.insert(ineq.end(), H2.ineq.begin(), H2.ineq.end());

    for (int round = 0; round <= n + 1; ++round) {
        // Parametrize the equality subspace: x = x0 + N z.
        Vec<T> x0(n, T(0));
        std::vector<Vec<T>> N;
        if (!eq.empty()) {
            Mat<T> A;
            Vec<T> b;
            for (auto& [a, bb] : eq) { A.push_back(a); b.push_back(bb); }
            // Particular solution via least-squares-free Gaussian elimination:
            // append and reduce. Use rank-revealing elimination on [A|b].
            int rows = (int)A.size();
            Mat<T> Ab(A);
            for (int i = 0; i < rows; ++i) Ab[i].push_back(b[i]);
            // Reduce.
            int r = 0;
            std::vector<int> pivots;
            for (int c = 0; c < n && r < rows; ++c) {
                int p = -1;
                for (int i = r; i < rows; ++i)
                    if (ScalarTraits<T>::sign(Ab[i][c]) != 0) { p = i; break; }
                if (p < 0) continue;
                std::swap(Ab[p], Ab[r]);
                for (int i = 0; i < rows; ++i) {
                    if (i == r || ScalarTraits<T>::sign(Ab[i][c]) == 0) continue;
                    T f = Ab[i][c] / Ab[r][c];
                    for (int cc = 0; cc <= n; ++cc) Ab[i][cc] -= f * Ab[r][cc];
                }
                pivots.push_back(c);
                ++r;
            }
            for (int i = r; i < rows; ++i)
                if (ScalarTraits<T>::sign(Ab[i][n]) != 0) return std::nullopt;  // inconsistent
            for (int i = 0; i < r; ++i) x0[pivots[i]] = Ab[i][n] / Ab[i][pivots[i]];
            Mat<T> Ared;
            for (int i = 0; i < r; ++i) Ared.push_back(Vec<T>(Ab[i].begin(), Ab[i].begin() + n));
            N = null_space(Ared);
        } else {
            N = mat_identity<T>(n);
        }
        int k = (int)N.size();
        if (k == 0) {
            for (auto& [a, b] : ineq)
                if (ScalarTraits<T>::sign(dot(a, x0) - b) > 0) return std::nullopt;
            return convex_hull_t<T>({x0});
        }
        // Substitute into inequalities.
        std::vector<std::pair<Vec<T>, T>> hz;
        for (auto& [a, b] : ineq) {
            Vec<T> az(k);
            for (int j = 0; j < k; ++j) az[j] = dot(a, N[j]);
            T bz = b - dot(a, x0);
            bool zero = true;
            for (auto& v : az)
                if (ScalarTraits<T>::sign(v) != 0) zero = false;
            if (zero) {
                if (ScalarTraits<T>::sign(bz) < 0) return std::nullopt;
                continue;
            }
            hz.push_back({std::move(az), bz});
        }
        if (hz.empty()) {
            // Whole subspace: unbounded unless k == 0 (handled above).
            throw UnboundedError();
        }
        auto [t, z0] = max_slack_point(hz, k);
        if (ScalarTraits<T>::sign(t) < 0) return std::nullopt;
        if (ScalarTraits<T>::sign(t) > 0) {
            PolytopeT<T> Z = halfspace_intersection_t(hz, std::optional<Vec<T>>(z0));
            std::vector<Vec<T>> pts;
            for (const auto& z : Z.verts) {
                Vec<T> x = x0;
                for (int j = 0; j < k; ++j)
                    for (int c = 0; c < n; ++c) x[c] += z[j] * N[j][c];
                pts.push_back(std::move(x));
            }
            return convex_hull_t(pts);
        }
        // Touching: promote always-tight inequalities to equalities and retry.
        std::vector<std::pair<Vec<T>, T>> new_eq;
        std::vector<std::pair<Vec<T>, T>> keep;
        for (size_t i = 0; i < hz.size(); ++i) {
            Mat<T> A;
            Vec<T> bb, c;
            for (const auto& [a, b2] : hz) { A.push_back(a); bb.push_back(b2); }
            c = neg(hz[i].first);
            auto r2 = lp_maximize(A, bb, c);
            // max of (b_i - <a_i, z>) = r2.objective + b_i
            if (r2.status != LpResult<T>::Optimal) throw GeometryError("tightness LP failed");
            T maxslack = r2.objective + hz[i].second;
            if (ScalarTraits<T>::sign(maxslack) == 0) {
                // Always tight: lift back to ambient equality.
                Vec<T> a_amb = vec_zero<T>(n);
                for (int j = 0; j < k; ++j)
                    for (int cc = 0; cc < n; ++cc) a_amb[cc] += hz[i].first[j] * N[j][cc];
                // <a_z, z> <= b_z tight ⇒ equality in z; in ambient terms use
                // the original inequality index? Simpler: equality in terms of
                // substituted coordinates: <a_amb, x - x0> = b_z.
                new_eq.push_back({a_amb, hz[i].second + dot(a_amb, x0)});
            }
        }
        if (new_eq.empty()) throw GeometryError("degenerate intersection without tight constraints");
        eq.insert(eq.end(), new_eq.begin(), new_eq.end());
    }
    throw GeometryError("intersection did not stabilize");
}

// ---------------------------------------------------------------------------
// Cones of faces

template <class T>
struct FaceCones {
    std::vector<Vec<T>> tangent;  // generators (cone = nonneg combinations + span of lineality)
    std::vector<Vec<T>> normal;
};

/// Tangent and normal cone generators at (the relative interior of) a face,
/// ambient coordinates. The face is given by its dimension and index into
/// faces[dim]; dim == P.d refers to the whole polytope.
template <class T>
FaceCones<T> face_cones_t(const PolytopeT<T>& P, int fdim, int findex) {
    if (!P.lattice_built) throw GeometryError("face lattice not built (d > 3?)");
    FaceCones<T> C;
    std::vector<int> fverts;
    std::vector<int> ffacets;
    if (fdim == P.d) {
        for (int i = 0; i < (int)P.verts.size(); ++i) fverts.push_back(i);
    } else {
        if (fdim < 0 || fdim >= P.d || findex < 0 || findex >= (int)P.faces[fdim].size())
            throw GeometryError("invalid face id");
        fverts = P.faces[fdim][findex].verts;
        ffacets = P.faces[fdim][findex].facets;
    }
    // Relative interior point of the face.
    Vec<T> x0 = vec_zero<T>(P.n);
    for (int v : fverts) x0 = add(x0, P.verts[v]);
    for (auto& c : x0) c /= T((long)fverts.size());
    for (const auto& v : P.verts) {
        Vec<T> g = sub(v, x0);
        bool zero = true;
        for (auto& c : g)
            if (ScalarTraits<T>::sign(c) != 0) zero = false;
        if (!zero) C.tangent.push_back(std::move(g));
    }
    auto H = ambient_hrep(P);
    for (int fi : ffacets) C.normal.push_back(H.ineq[fi].first);
    // Degenerate polytopes: the orthogonal complement is normal lineality.
    for (const auto& [a, b] : H.eq) {
        C.normal.push_back(a);
        C.normal.push_back(neg(a));
    }
    return C;
}

// ---------------------------------------------------------------------------
// Containment residuals (exact convex comparisons)

inline Vec<double> vec_to_double_any(const Vec<Rat>& v) { return vec_to_double(v); }
inline Vec<double> vec_to_double_any(const Vec<double>& v) { return v; }

/// max over vertices of Q of the worst facet violation w.r.t. P
/// (0 means Q ⊆ P). Works on the ambient H-representation, so it is exact in
/// rational mode including degenerate polytopes.
template <class T>
double containment_residual(const PolytopeT<T>& Q, const PolytopeT<T>& P) {
    auto H = ambient_hrep(P);
    double worst = 0;
    for (const auto& v : Q.verts) {
        for (const auto& [a, b] : H.ineq) {
            double viol = to_double(dot(a, v) - b) / std::max(1.0, norm(vec_to_double_any(a)));
            worst = std::max(worst, viol);
        }
        for (const auto& [a, b] : H.eq) {
            double viol = std::abs(to_double(dot(a, v) - b)) / std::max(1.0, norm(vec_to_double_any(a)));
            worst = std::max(worst, viol);
        }
    }
    return worst;
}

/// Symmetric shape difference: max of the two containment residuals.
template <class T>
double hausdorff_residual(const PolytopeT<T>& P, const PolytopeT<T>& Q) {
    return std::max(containment_residual(P, Q), containment_residual(Q, P));
}

/// Exact equality of vertex sets (same polytope).
template <class T>
bool same_vertex_set(const PolytopeT<T>& P, const PolytopeT<T>& Q) {
    if (P.verts.size() != Q.verts.size()) return false;
    auto a = P.verts, b = Q.verts;
    auto less = [](const Vec<T>& x, const Vec<T>& y) {
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] < y[i]) return true;
            if (y[i] < x[i]) return false;
        }
        return false;
    };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

}  // namespace minkval
