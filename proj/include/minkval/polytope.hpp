#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "minkval/linalg.hpp"
#include "minkval/scalar.hpp"

namespace minkval {

inline constexpr int kMaxDim = 6;

template <class T>
struct HalfspaceT {
    Vec<T> a;  // <a,x> <= b
    T b;
};

/// Combinatorial face: sorted global vertex ids plus the facets containing it.
struct Face {
    int dim = 0;
    std::vector<int> verts;   // sorted
    std::vector<int> facets;  // intrinsic facet indices containing the face
};

/// Convex polytope, vertex + facet representation.
///
/// Lower-dimensional polytopes are reduced to their affine hull: intrinsic
/// coordinates y relate to ambient x by x = origin + sum_i y_i basis[i].
/// For full-dimensional polytopes the chart is the identity. Facets are
/// stored in intrinsic coordinates; the face lattice is built for d <= 3.
template <class T>
struct PolytopeT {
    int n = 0;  // ambient dimension
    int d = 0;  // intrinsic dimension
    std::vector<Vec<T>> verts;   // extreme points, ambient coordinates
    Vec<T> origin;               // chart
    std::vector<Vec<T>> basis;   // d vectors in R^n
    std::vector<Vec<T>> iverts;  // intrinsic coordinates of verts

    std::vector<HalfspaceT<T>> ifacets;          // facets, intrinsic coords
    std::vector<std::vector<int>> facet_verts;   // per facet: vertex ids (ordered cycle when d==3 facet polygons, pair for d==2)
    std::vector<std::vector<Face>> faces;        // faces[k] = k-faces, k = 0..d-1 (only when lattice_built)
    bool lattice_built = false;

    // Boundary triangulation captured at build time: a point strictly inside
    // plus the simplicial (pre-merge) facets, intrinsic coordinates. Coning
    // ipoint over tri gives an exact simplicial decomposition.
    Vec<T> ipoint;
    std::vector<std::vector<Vec<T>>> tri;

    bool full_dim() const { return d == n; }
    bool is_point() const { return d == 0; }
    size_t vertex_count() const { return verts.size(); }

    Vec<T> to_ambient(const Vec<T>& y) const {
        Vec<T> x = origin;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < n; ++j) x[j] += y[i] * basis[i][j];
        return x;
    }
};

namespace hulldet {

// Simplicial facet used during incremental construction.
template <class T>
struct SFacet {
    Vec<T> a;
    T b;
    std::vector<int> vids;       // d vertex ids
    std::vector<int> neighbor;   // neighbor[i] = facet across ridge opposite vids[i]
    bool alive = true;
};

template <class T>
int side(const SFacet<T>& f, const Vec<T>& p) {
    return ScalarTraits<T>::sign(dot(f.a, p) - f.b);
}

// Hyperplane through the d points pts[ids], oriented away from `inside`.
// Returns false if the points are affinely dependent.
template <class T>
bool facet_plane(const std::vector<Vec<T>>& pts, const std::vector<int>& ids,
                 const Vec<T>& inside, Vec<T>& a, T& b) {
    int d = (int)ids.size();
    // Normal = null space of the (d-1) x d matrix of edge vectors.
    Mat<T> E;
    for (int i = 1; i < d; ++i) E.push_back(sub(pts[ids[i]], pts[ids[0]]));
    auto ns = null_space(E.empty() ? Mat<T>{Vec<T>(1, T(0))} : E);
    if (d == 1) { ns.clear(); ns.push_back(Vec<T>{T(1)}); }
    if (ns.size() != 1) return false;
    a = ns[0];
    b = dot(a, pts[ids[0]]);
    T s = dot(a, inside) - b;
    int sg = ScalarTraits<T>::sign(s);
    if (sg == 0) return false;
    if (sg > 0) { a = neg(a); b = -b; }
    if constexpr (!ScalarTraits<T>::exact) {
        double nn = norm(a);
        for (auto& x : a) x /= nn;
        b /= nn;
    } else {
        // Keep rational facet data small: scale to a primitive integer vector.
        mpz_class den(1);
        for (const auto& x : a) den = den * x.get_den() / gcd(den, mpz_class(x.get_den()));
        den = den * b.get_den() / gcd(den, mpz_class(b.get_den()));
        Rat scale(den, 1);
        mpz_class g(0);
        for (auto& x : a) { x *= scale; g = gcd(g, mpz_class(x.get_num())); }
        T bb = b * scale;
        g = gcd(g, mpz_class(bb.get_num()));
        if (g != 0) {
            Rat inv(mpz_class(1), g);
            for (auto& x : a) x *= inv;
            bb *= inv;
        }
        b = bb;
    }
    return true;
}

}  // namespace hulldet

/// Result of the core incremental hull in intrinsic dimension d >= 2:
/// simplicial facets (before merging) over the input point array.
template <class T>
struct SimplicialHull {
    std::vector<hulldet::SFacet<T>> facets;  // alive ones only
    Vec<T> interior;                         // a point strictly inside
};

template <class T>
SimplicialHull<T> simplicial_hull(const std::vector<Vec<T>>& pts, const std::vector<int>& init_simplex) {
    using hulldet::SFacet;
    int d = (int)pts[0].size();
    SimplicialHull<T> H;
    // Interior point: centroid of the initial simplex.
    Vec<T> c = vec_zero<T>(d);
    for (int id : init_simplex) c = add(c, pts[id]);
    for (auto& x : c) x /= T((long)init_simplex.size());
    H.interior = c;

    std::vector<SFacet<T>> F;
    // Initial simplex facets: drop each vertex in turn.
    for (int drop = 0; drop <= d; ++drop) {
        SFacet<T> f;
        for (int i = 0; i <= d; ++i)
            if (i != drop) f.vids.push_back(init_simplex[i]);
        if (!hulldet::facet_plane(pts, f.vids, c, f.a, f.b))
            throw GeometryError("degenerate initial simplex");
        f.neighbor.assign(d, -1);
        F.push_back(std::move(f));
    }
    // Adjacency among initial facets via ridge map.
    auto ridge_key = [](std::vector<int> v, int omit) {
        v.erase(v.begin() + omit);
        std::sort(v.begin(), v.end());
        return v;
    };
    {
        std::map<std::vector<int>, std::pair<int, int>> rm;
        for (int fi = 0; fi < (int)F.size(); ++fi)
            for (int k = 0; k < d; ++k) {
                auto key = ridge_key(F[fi].vids, k);
                auto it = rm.find(key);
                if (it == rm.end()) rm[key] = {fi, k};
                else {
                    F[fi].neighbor[k] = it->second.first;
                    F[it->second.first].neighbor[it->second.second] = fi;
                }
            }
    }

    std::vector<char> used(pts.size(), 0);
    for (int id : init_simplex) used[id] = 1;

    for (int p = 0; p < (int)pts.size(); ++p) {
        if (used[p]) continue;
        used[p] = 1;
        // Strictly visible facets.
        std::vector<int> vis;
        for (int fi = 0; fi < (int)F.size(); ++fi)
            if (F[fi].alive && hulldet::side(F[fi], pts[p]) > 0) vis.push_back(fi);
        if (vis.empty()) continue;  // inside or on boundary: not extreme
        std::vector<char> visible(F.size(), 0);
        for (int fi : vis) visible[fi] = 1;
        // Horizon ridges and new facets.
        std::map<std::vector<int>, std::pair<int, int>> new_ridges;  // ridge -> (new facet, slot)
        std::vector<int> created;
        for (int fi : vis) {
            F[fi].alive = false;
            for (int k = 0; k < d; ++k) {
                int nb = F[fi].neighbor[k];
                if (nb >= 0 && visible[nb]) continue;  // interior ridge of visible region
                // Horizon ridge: vids minus slot k, plus apex p.
                SFacet<T> nf;
                for (int i = 0; i < d; ++i)
                    if (i != k) nf.vids.push_back(F[fi].vids[i]);
                nf.vids.push_back(p);
                if (!hulldet::facet_plane(pts, nf.vids, H.interior, nf.a, nf.b)) {
                    // Apex lies on the ridge's affine hull; the sliver facet is
                    // skipped and the neighbor keeps its (still valid) plane.
                    // Mark adjacency hole; repaired below by ridge rescan.
                    continue;
                }
                nf.neighbor.assign(d, -1);
                int nfi = (int)F.size();
                // Link across the horizon ridge.
                if (nb >= 0) {
                    for (int kk = 0; kk < d; ++kk)
                        if (F[nb].neighbor[kk] == fi) F[nb].neighbor[kk] = nfi;
                    nf.neighbor[d - 1] = nb;  // slot opposite apex p is the horizon ridge
                }
                F.push_back(nf);
                created.push_back(nfi);
            }
        }
        // Link the new facets among themselves (ridges containing apex p).
        std::map<std::vector<int>, std::pair<int, int>> rm;
        for (int nfi : created) {
            auto& f = F[nfi];
            for (int k = 0; k < d; ++k) {
                if (f.vids[k] == p) continue;  // ridge opposite a base vertex contains p
                auto key = ridge_key(f.vids, k);
                auto it = rm.find(key);
                if (it == rm.end()) rm[key] = {nfi, k};
                else {
                    f.neighbor[k] = it->second.first;
                    F[it->second.first].neighbor[it->second.second] = nfi;
                }
            }
        }
    }
    for (auto& f : F)
        if (f.alive) H.facets.push_back(std::move(f));
    return H;
}

namespace hulldet {

/// Canonical key of a hyperplane (a,b) for exact merging.
inline std::string plane_key(const Vec<Rat>& a, const Rat& b) {
    std::string s = b.get_str();
    for (const auto& x : a) { s += '|'; s += x.get_str(); }
    return s;
}

inline long quantize(double x) { return std::lround(x * 2e7); }

inline std::string plane_key(const Vec<double>& a, const double& b) {
    // Normalized (a,b): quantize to ~5e-8 grid. Near-boundary pairs may fail
    // to merge; tolerated in float mode.
    std::string s = std::to_string(quantize(b));
    for (double x : a) { s += '|'; s += std::to_string(quantize(x)); }
    return s;
}

}  // namespace hulldet

template <class T>
class HullBuilder {
  public:
    /// points: ambient coordinates, dimension n. Throws on empty input or n > 6.
    static PolytopeT<T> build(const std::vector<Vec<T>>& points, bool want_lattice = true) {
        if (points.empty()) throw GeometryError("convex hull of empty point set");
        int n = (int)points[0].size();
        if (n < 1 || n > kMaxDim) throw GeometryError("ambient dimension must be 1..6");
        for (const auto& p : points)
            if ((int)p.size() != n) throw GeometryError("dimension mismatch in point set");

        // Dedupe.
        std::vector<Vec<T>> pts = points;
        std::sort(pts.begin(), pts.end(), [](const Vec<T>& x, const Vec<T>& y) {
            for (size_t i = 0; i < x.size(); ++i) {
                if (x[i] < y[i]) return true;
                if (y[i] < x[i]) return false;
            }
            return false;
        });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

        PolytopeT<T> P;
        P.n = n;

        // Affine hull: greedy independent subset.
        std::vector<int> aff = {0};
        Mat<T> E;
        for (int i = 1; i < (int)pts.size(); ++i) {
            Mat<T> E2 = E;
            E2.push_back(sub(pts[i], pts[0]));
            if (rank(E2) == (int)E2.size()) {
                E = std::move(E2);
                aff.push_back(i);
            }
        }
        int d = (int)aff.size() - 1;
        P.d = d;

        if (d == n) {
            P.origin = vec_zero<T>(n);
            P.basis = mat_identity<T>(n);
        } else {
            P.origin = pts[aff[0]];
            for (int i = 1; i <= d; ++i) P.basis.push_back(sub(pts[aff[i]], pts[aff[0]]));
        }

        // Intrinsic coordinates.
        std::vector<Vec<T>> ipts;
        ipts.reserve(pts.size());
        if (d == n) {
            ipts = pts;
        } else {
            // Solve B^T B y = B^T (x - origin): exact Gram solve.
            Mat<T> G(d, Vec<T>(d));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) G[i][j] = dot(P.basis[i], P.basis[j]);
            for (const auto& x : pts) {
                Vec<T> rhs(d);
                Vec<T> dx = sub(x, P.origin);
                for (int i = 0; i < d; ++i) rhs[i] = dot(P.basis[i], dx);
                Vec<T> y;
                if (!solve(G, rhs, y)) throw GeometryError("affine chart solve failed");
                ipts.push_back(std::move(y));
            }
        }

        if (d == 0) {
            P.verts = {pts[0]};
            P.iverts = {Vec<T>{}};
            P.ipoint = Vec<T>{};
            P.lattice_built = true;
            return P;
        }
        if (d == 1) {
            int lo = 0, hi = 0;
            for (int i = 1; i < (int)ipts.size(); ++i) {
                if (ipts[i][0] < ipts[lo][0]) lo = i;
                if (ipts[i][0] > ipts[hi][0]) hi = i;
            }
            P.iverts = {ipts[lo], ipts[hi]};
            P.verts = {pts[lo], pts[hi]};
            P.ifacets = {{Vec<T>{T(-1)}, -ipts[lo][0]}, {Vec<T>{T(1)}, ipts[hi][0]}};
            P.facet_verts = {{0}, {1}};
            P.faces.assign(1, {});
            P.faces[0].push_back(Face{0, {0}, {0}});
            P.faces[0].push_back(Face{0, {1}, {1}});
            P.ipoint = Vec<T>{(ipts[lo][0] + ipts[hi][0]) / T(2)};
            P.tri = {{P.iverts[0]}, {P.iverts[1]}};
            P.lattice_built = true;
            return P;
        }

        // Incremental hull in intrinsic coordinates.
        std::vector<int> init;
        for (int i : aff) init.push_back(i);
        auto H = simplicial_hull(ipts, init);
        P.ipoint = H.interior;
        for (const auto& f : H.facets) {
            std::vector<Vec<T>> simplex;
            for (int v : f.vids) simplex.push_back(ipts[v]);
            P.tri.push_back(std::move(simplex));
        }

        // Merge coplanar simplicial facets into true facets.
        std::unordered_map<std::string, int> groups;
        std::vector<HalfspaceT<T>> planes;
        std::vector<std::set<int>> members;  // point ids per plane
        for (const auto& f : H.facets) {
            auto key = hulldet::plane_key(f.a, f.b);
            auto it = groups.find(key);
            int gi;
            if (it == groups.end()) {
                gi = (int)planes.size();
                groups[key] = gi;
                planes.push_back({f.a, f.b});
                members.emplace_back();
            } else {
                gi = it->second;
            }
            for (int v : f.vids) members[gi].insert(v);
        }

        // True vertex set: points extreme in the merged structure. A point is
        // a vertex iff it is a vertex of every-dim recursion; we resolve it by
        // recursing on each merged facet and keeping corners only.
        std::vector<std::set<int>> facet_corner_ids(planes.size());
        std::set<int> vertex_ids;
        for (size_t gi = 0; gi < planes.size(); ++gi) {
            std::vector<int> ids(members[gi].begin(), members[gi].end());
            if ((int)ids.size() == d) {
                facet_corner_ids[gi] = members[gi];
            } else {
                // Recurse: hull of the facet's points inside its hyperplane.
                std::vector<Vec<T>> fpts;
                for (int id : ids) fpts.push_back(ipts[id]);
                PolytopeT<T> FP = build(fpts, false);
                for (const auto& v : FP.verts) {
                    auto it = std::find(fpts.begin(), fpts.end(), v);
                    facet_corner_ids[gi].insert(ids[it - fpts.begin()]);
                }
            }
            for (int id : facet_corner_ids[gi]) vertex_ids.insert(id);
        }

        // Re-index the surviving vertices.
        std::map<int, int> newid;
        for (int id : vertex_ids) {
            int k = (int)newid.size();
            newid[id] = k;
            P.verts.push_back(pts[id]);
            P.iverts.push_back(ipts[id]);
        }
        for (size_t gi = 0; gi < planes.size(); ++gi) {
            std::vector<int> fv;
            for (int id : facet_corner_ids[gi]) fv.push_back(newid[id]);
            std::sort(fv.begin(), fv.end());
            P.ifacets.push_back(planes[gi]);
            P.facet_verts.push_back(std::move(fv));
        }

        if (want_lattice && d <= 3) build_lattice(P);
        return P;
    }

    /// Builds faces[0..d-1] for d <= 3 and orders facet vertex cycles.
    static void build_lattice(PolytopeT<T>& P) {
        int d = P.d;
        P.faces.assign(d, {});
        if (d == 2) order_polygon(P);  // permutes vertex ids; do it first
        // Vertices as faces, with containing facets.
        for (int v = 0; v < (int)P.verts.size(); ++v) {
            Face f;
            f.dim = 0;
            f.verts = {v};
            for (int fi = 0; fi < (int)P.ifacets.size(); ++fi)
                if (std::find(P.facet_verts[fi].begin(), P.facet_verts[fi].end(), v) != P.facet_verts[fi].end())
                    f.facets.push_back(fi);
            P.faces[0].push_back(std::move(f));
        }
        if (d == 2) {
            for (int fi = 0; fi < (int)P.ifacets.size(); ++fi) {
                Face f;
                f.dim = 1;
                f.verts = P.facet_verts[fi];
                f.facets = {fi};
                P.faces[1].push_back(std::move(f));
            }
        } else if (d == 3) {
            // Order each facet polygon CCW seen from outside.
            for (int fi = 0; fi < (int)P.ifacets.size(); ++fi)
                P.facet_verts[fi] = order_facet_cycle(P, fi);
            // Edges from consecutive facet-cycle pairs.
            std::map<std::pair<int, int>, std::vector<int>> edges;
            for (int fi = 0; fi < (int)P.ifacets.size(); ++fi) {
                const auto& cyc = P.facet_verts[fi];
                int m = (int)cyc.size();
                for (int i = 0; i < m; ++i) {
                    int u = cyc[i], v = cyc[(i + 1) % m];
                    auto key = std::minmax(u, v);
                    edges[{key.first, key.second}].push_back(fi);
                }
            }
            for (auto& [vv, fs] : edges) {
                Face f;
                f.dim = 1;
                f.verts = {vv.first, vv.second};
                std::sort(fs.begin(), fs.end());
                fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
                f.facets = fs;
                P.faces[1].push_back(std::move(f));
            }
            for (int fi = 0; fi < (int)P.ifacets.size(); ++fi) {
                Face f;
                f.dim = 2;
                f.verts = P.facet_verts[fi];
                std::vector<int> sorted(f.verts);
                std::sort(sorted.begin(), sorted.end());
                f.facets = {fi};
                P.faces[2].push_back(std::move(f));
            }
        }
        P.lattice_built = true;
    }

    static void order_polygon(PolytopeT<T>& P) {
        // Sort vertices CCW around the centroid; rebuild edge facet_verts
        // accordingly so that facet_verts[i] = {cycle[i], cycle[i+1]} matches
        // the facet whose normal supports that edge.
        int m = (int)P.iverts.size();
        Vec<T> c = vec_zero<T>(2);
        for (const auto& v : P.iverts) c = add(c, v);
        for (auto& x : c) x /= T((long)m);
        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        auto half = [&](int k) {  // 0: angle in [0,pi), 1: [pi,2pi)
            T y = P.iverts[k][1] - c[1], x = P.iverts[k][0] - c[0];
            int sy = ScalarTraits<T>::sign(y);
            if (sy > 0) return 0;
            if (sy < 0) return 1;
            return ScalarTraits<T>::sign(x) > 0 ? 0 : 1;
        };
        std::sort(idx.begin(), idx.end(), [&](int i, int j) {
            int hi = half(i), hj = half(j);
            if (hi != hj) return hi < hj;
            T cr = (P.iverts[i][0] - c[0]) * (P.iverts[j][1] - c[1]) -
                   (P.iverts[i][1] - c[1]) * (P.iverts[j][0] - c[0]);
            return ScalarTraits<T>::sign(cr) > 0;
        });
        // Permute vertices into cycle order.
        std::vector<Vec<T>> nv, niv;
        std::vector<int> inv(m);
        for (int k = 0; k < m; ++k) {
            nv.push_back(P.verts[idx[k]]);
            niv.push_back(P.iverts[idx[k]]);
            inv[idx[k]] = k;
        }
        P.verts = nv;
        P.iverts = niv;
        // Edge facets: match each halfspace to the consecutive pair it supports.
        std::vector<HalfspaceT<T>> nf;
        std::vector<std::vector<int>> nfv;
        for (int k = 0; k < m; ++k) {
            int u = k, v = (k + 1) % m;
            // Find the stored facet containing both u and v.
            bool found = false;
            for (size_t fi = 0; fi < P.ifacets.size(); ++fi) {
                int cnt = 0;
                for (int w : P.facet_verts[fi]) {
                    int nw = inv[w];
                    if (nw == u || nw == v) ++cnt;
                }
                if (cnt == 2 && ScalarTraits<T>::sign(dot(P.ifacets[fi].a, P.iverts[u]) - P.ifacets[fi].b) == 0) {
                    nf.push_back(P.ifacets[fi]);
                    nfv.push_back({u, v});
                    found = true;
                    break;
                }
            }
            if (!found) throw GeometryError("polygon edge facet not found");
        }
        P.ifacets = nf;
        P.facet_verts = nfv;
    }

    /// CCW cycle of a 3-polytope facet as seen from outside.
    static std::vector<int> order_facet_cycle(const PolytopeT<T>& P, int fi) {
        const auto& ids = P.facet_verts[fi];
        const auto& a = P.ifacets[fi].a;
        // Build a 2D frame in the facet plane.
        Vec<T> u0 = sub(P.iverts[ids[1]], P.iverts[ids[0]]);
        // v0 = a x u0 (3D cross product)
        Vec<T> v0 = {a[1] * u0[2] - a[2] * u0[1], a[2] * u0[0] - a[0] * u0[2],
                     a[0] * u0[1] - a[1] * u0[0]};
        Vec<T> c = vec_zero<T>(3);
        for (int id : ids) c = add(c, P.iverts[id]);
        for (auto& x : c) x /= T((long)ids.size());
        std::vector<int> cyc(ids);
        auto coords = [&](int k) {
            Vec<T> w = sub(P.iverts[k], c);
            return std::pair<T, T>(dot(w, u0), dot(w, v0));
        };
        auto half = [&](int k) {
            auto [x, y] = coords(k);
            int sy = ScalarTraits<T>::sign(y);
            if (sy > 0) return 0;
            if (sy < 0) return 1;
            return ScalarTraits<T>::sign(x) > 0 ? 0 : 1;
        };
        std::sort(cyc.begin(), cyc.end(), [&](int i, int j) {
            int hi = half(i), hj = half(j);
            if (hi != hj) return hi < hj;
            auto [xi, yi] = coords(i);
            auto [xj, yj] = coords(j);
            return ScalarTraits<T>::sign(xi * yj - yi * xj) > 0;
        });
        // Ensure CCW w.r.t. outward normal: signed area in the (u0,v0) frame
        // must be positive after accounting for the frame handedness; the
        // frame (u0, a x u0, a) is right-handed by construction, so angle
        // order is already CCW from outside.
        return cyc;
    }
};

/// convex_hull over ambient points.
template <class T>
PolytopeT<T> convex_hull_t(const std::vector<Vec<T>>& points) {
    return HullBuilder<T>::build(points);
}

// ---------------------------------------------------------------------------
// Runtime wrapper carrying the scalar mode.

class Polytope {
  public:
    Polytope() = default;
    explicit Polytope(PolytopeT<Rat> p) : impl_(std::move(p)) {}
    explicit Polytope(PolytopeT<double> p) : impl_(std::move(p)) {}

    Mode mode() const { return std::holds_alternative<PolytopeT<Rat>>(impl_) ? Mode::Rational : Mode::Float; }
    const PolytopeT<Rat>& rat() const { return std::get<PolytopeT<Rat>>(impl_); }
    const PolytopeT<double>& flt() const { return std::get<PolytopeT<double>>(impl_); }

    template <class F>
    auto visit(F&& f) const { return std::visit(std::forward<F>(f), impl_); }

    int ambient_dim() const { return visit([](const auto& p) { return p.n; }); }
    int intrinsic_dim() const { return visit([](const auto& p) { return p.d; }); }
    size_t vertex_count() const { return visit([](const auto& p) { return p.verts.size(); }); }

    std::vector<Vec<double>> vertices_double() const {
        if (mode() == Mode::Rational) {
            std::vector<Vec<double>> r;
            for (const auto& v : rat().verts) r.push_back(vec_to_double(v));
            return r;
        }
        return flt().verts;
    }

  private:
    std::variant<PolytopeT<Rat>, PolytopeT<double>> impl_;
};

}  // namespace minkval
