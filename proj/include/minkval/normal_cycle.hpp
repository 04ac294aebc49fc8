#pragma once

#include <functional>
#include <random>

#include "minkval/density.hpp"
#include "minkval/support_body.hpp"
#include "minkval/valuation.hpp"

namespace minkval {

// ---------------------------------------------------------------------------
// Strata of normal cycles of polytopes.
//
// A stratum is a product (face simplex) x (spherical patch): the face part is
// a j-simplex in R^n, the patch a (n-1-j)-dimensional spherical cell given by
// its corner directions (point / arc / spherical triangle). Patches of
// lower-dimensional polytopes pick up the orthogonal complement as lineality,
// split into orthant pieces so every stored patch is pointed.

struct Stratum {
    int face_dim = 0;                 // j
    std::vector<Vec<double>> face;    // j+1 simplex corners, ambient coords
    std::vector<Vec<double>> patch;   // 1, 2, or 3 unit corner directions
    int coeff = 1;                    // multiplicity in formal sums
    int face_id = -1;                 // lattice provenance (dim, index packed by caller)
};

/// Lift of the cycle under a diffeomorphism (applied to quadrature nodes).
struct CycleLift {
    std::function<Vec<double>(const Vec<double>&)> map;      // x -> g(x)
    std::function<Mat<double>(const Vec<double>&)> jacobian;  // Dg(x)
};

struct NormalCycle {
    int n = 0;
    std::vector<Stratum> strata;
    std::vector<CycleLift> lifts;  // applied in order

    NormalCycle& operator+=(const NormalCycle& o) {
        if (!lifts.empty() || !o.lifts.empty())
            throw GeometryError("formal sums of lifted cycles are not supported");
        for (const auto& s : o.strata) strata.push_back(s);
        return *this;
    }
    NormalCycle scaled(int c) const {
        NormalCycle r = *this;
        for (auto& s : r.strata) s.coeff *= c;
        return r;
    }
};

namespace ncdet {

inline Vec<double> slerp(const Vec<double>& a, const Vec<double>& b, double t) {
    double ang = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
    if (ang < 1e-14) return a;
    double sa = std::sin((1 - t) * ang) / std::sin(ang), sb = std::sin(t * ang) / std::sin(ang);
    return normalized(add(scale(a, sa), scale(b, sb)));
}

/// Splits an arc (a->b, going through mid when given) into pieces of angle
/// <= pi/2, each stored by its two corners.
inline void emit_arcs(const Vec<double>& a, const Vec<double>& b,
                      std::vector<std::array<Vec<double>, 2>>& out) {
    double ang = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
    int pieces = std::max(1, (int)std::ceil(ang / (M_PI / 2) - 1e-12));
    Vec<double> prev = a;
    for (int i = 1; i <= pieces; ++i) {
        Vec<double> nxt = slerp(a, b, (double)i / pieces);
        out.push_back({prev, nxt});
        prev = nxt;
    }
}

}  // namespace ncdet

/// Normal cycle of a polytope of any intrinsic dimension (n <= 3).
template <class T>
NormalCycle normal_cycle_t(const PolytopeT<T>& P) {
    if (P.n > 3) throw GeometryError("normal cycles implemented for n <= 3");
    if (!P.lattice_built) throw GeometryError("normal cycle needs the face lattice");
    NormalCycle N;
    N.n = P.n;
    int n = P.n, d = P.d;

    // Ambient basis of the orthogonal complement of the affine hull.
    std::vector<Vec<double>> comp;
    if (d < n) {
        Mat<T> rows;
        for (const auto& b : P.basis) rows.push_back(b);
        if (rows.empty()) rows.push_back(vec_zero<T>(n));
        for (auto& nu : null_space(rows)) comp.push_back(normalized(vec_to_double_any(nu)));
        if (comp.size() == 2) {
            // Orthogonalize for clean quarter splits.
            comp[1] = normalized(sub(comp[1], scale(comp[0], dot(comp[1], comp[0]))));
        }
    }
    auto H = ambient_hrep(P);

    // Face simplices (ambient coords) of a lattice face.
    auto face_simplices = [&](int fdim, const Face& f) {
        std::vector<std::vector<Vec<double>>> out;
        if (fdim == 0) {
            out.push_back({vec_to_double_any(P.verts[f.verts[0]])});
        } else if (fdim == 1) {
            out.push_back({vec_to_double_any(P.verts[f.verts[0]]), vec_to_double_any(P.verts[f.verts[1]])});
        } else {
            // Facet polygon (d == 3): fan triangulation of the ordered cycle.
            const auto& cyc = f.verts;
            for (size_t i = 1; i + 1 < cyc.size(); ++i)
                out.push_back({vec_to_double_any(P.verts[cyc[0]]), vec_to_double_any(P.verts[cyc[i]]),
                               vec_to_double_any(P.verts[cyc[i + 1]])});
        }
        return out;
    };

    // Intrinsic (within the affine hull) outward normal cone corner rays of a
    // face, in ambient coordinates.
    auto intrinsic_cone = [&](int fdim, const Face& f) {
        std::vector<Vec<double>> rays;
        for (int fi : f.facets) rays.push_back(normalized(vec_to_double_any(H.ineq[fi].first)));
        (void)fdim;
        return rays;
    };

    // Emit strata for one face given its intrinsic cone rays; lineality from
    // comp is split into orthants.
    auto emit_face = [&](int fdim, int findex, const Face& f) {
        auto simplices = face_simplices(fdim, f);
        auto rays = intrinsic_cone(fdim, f);
        int patch_dim = n - 1 - fdim;
        // Enumerate lineality orthant extensions.
        std::vector<std::vector<Vec<double>>> ext = {{}};
        for (const auto& c : comp) {
            std::vector<std::vector<Vec<double>>> ext2;
            for (const auto& e : ext) {
                auto ep = e, em = e;
                ep.push_back(c);
                em.push_back(neg(c));
                ext2.push_back(ep);
                ext2.push_back(em);
            }
            ext = std::move(ext2);
        }
        for (const auto& lin : ext) {
            std::vector<Vec<double>> cone = rays;
            for (const auto& c : lin) cone.push_back(c);
            // Build patch cells of dimension patch_dim from the pointed cone.
            std::vector<std::vector<Vec<double>>> patches;
            int cd = (int)cone.size();  // number of corner rays
            if (patch_dim == 0) {
                if (cd != 1) continue;  // interior-like faces contribute nothing
                patches.push_back({cone[0]});
            } else if (patch_dim == 1) {
                if (cd != 2) continue;
                std::vector<std::array<Vec<double>, 2>> arcs;
                ncdet::emit_arcs(cone[0], cone[1], arcs);
                for (auto& a : arcs) patches.push_back({a[0], a[1]});
            } else {  // patch_dim == 2 (vertex of a 3-polytope family)
                if (cd < 3) continue;
                // Order corner rays around the cone axis and fan-triangulate;
                // split wide wedges for quadrature accuracy.
                std::vector<Vec<double>> ordered = cone;
                if (fdim == 0 && d == 3) {
                    // facets around the vertex are already cyclic from the walk below
                } else {
                    // lineality cases: rays + one or two complement dirs; at
                    // most 4 corners; order by angle around their mean.
                }
                Vec<double> axis = vec_zero<double>(n);
                for (const auto& u : ordered) axis = add(axis, u);
                if (norm(axis) < 1e-9) {
                    // split antipodal-ish configurations around the first ray
                    axis = ordered[0];
                }
                axis = normalized(axis);
                auto tb = tangent_basis(axis);
                std::sort(ordered.begin(), ordered.end(), [&](const Vec<double>& u, const Vec<double>& v) {
                    return std::atan2(dot(u, tb[1]), dot(u, tb[0])) < std::atan2(dot(v, tb[1]), dot(v, tb[0]));
                });
                for (size_t i = 1; i + 1 < ordered.size(); ++i) {
                    // subdivide each spherical triangle edge-wise if wide
                    patches.push_back({ordered[0], ordered[i], ordered[i + 1]});
                }
            }
            for (const auto& simplex : simplices)
                for (const auto& patch : patches) {
                    Stratum s;
                    s.face_dim = fdim;
                    s.face = simplex;
                    s.patch = patch;
                    s.coeff = 1;
                    s.face_id = findex;
                    N.strata.push_back(std::move(s));
                }
        }
    };

    if (d == 0) {
        // Single point: the whole sphere, split into orthant cells.
        Face f;
        f.dim = 0;
        f.verts = {0};
        emit_face(0, 0, f);
        return N;
    }
    for (int fdim = 0; fdim < d; ++fdim) {
        for (int fi = 0; fi < (int)P.faces[fdim].size(); ++fi) emit_face(fdim, fi, P.faces[fdim][fi]);
    }
    // The relative interior of a lower-dimensional polytope also carries
    // normals (the pure lineality patch), e.g. the two sides of a segment.
    if (d < n) {
        Face whole;
        whole.dim = d;
        // face simplices of the whole polytope: triangulate via tri data.
        auto simplices_of_whole = [&]() {
            std::vector<std::vector<Vec<double>>> out;
            if (d == 1) {
                out.push_back({vec_to_double_any(P.verts[0]), vec_to_double_any(P.verts[1])});
            } else if (d == 2) {
                // fan over boundary triangulation
                for (const auto& tri : P.tri) {
                    std::vector<Vec<double>> s = {vec_to_double_any(P.to_ambient(P.ipoint))};
                    for (const auto& p : tri) s.push_back(vec_to_double_any(P.to_ambient(p)));
                    out.push_back(std::move(s));
                }
            }
            return out;
        };
        int patch_dim = n - 1 - d;
        std::vector<std::vector<Vec<double>>> ext = {{}};
        for (const auto& c : comp) {
            std::vector<std::vector<Vec<double>>> ext2;
            for (const auto& e : ext) {
                auto ep = e, em = e;
                ep.push_back(c);
                em.push_back(neg(c));
                ext2.push_back(ep);
                ext2.push_back(em);
            }
            ext = std::move(ext2);
        }
        for (const auto& lin : ext) {
            std::vector<std::vector<Vec<double>>> patches;
            if (patch_dim == 0 && lin.size() == 1) patches.push_back({lin[0]});
            if (patch_dim == 1 && lin.size() == 2) {
                std::vector<std::array<Vec<double>, 2>> arcs;
                ncdet::emit_arcs(lin[0], lin[1], arcs);
                for (auto& a : arcs) patches.push_back({a[0], a[1]});
            }
            for (const auto& simplex : simplices_of_whole())
                for (const auto& patch : patches) {
                    Stratum s;
                    s.face_dim = d;
                    s.face = simplex;
                    s.patch = patch;
                    N.strata.push_back(std::move(s));
                }
        }
    }
    return N;
}

inline NormalCycle normal_cycle(const Polytope& P) {
    return P.visit([](const auto& p) { return normal_cycle_t(p); });
}

// ---------------------------------------------------------------------------
// Test forms and integration

/// (n-1)-form on R^n x S^{n-1}: evaluator on (x, u, frame of n-1 tangent
/// vectors in R^{2n}); multilinear alternating in the frame by construction
/// when built from coefficient tables c_I dz_I.
struct TestForm {
    int n = 2;
    std::string tag;
    std::function<double(const Vec<double>& x, const Vec<double>& u,
                         const std::vector<Vec<double>>& frame)>
        eval;
};

namespace ncdet {

inline double det2(const Vec<double>& a, const Vec<double>& b) { return a[0] * b[1] - a[1] * b[0]; }
inline double det3(const Vec<double>& a, const Vec<double>& b, const Vec<double>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline Vec<double> xpart(const Vec<double>& z, int n) { return Vec<double>(z.begin(), z.begin() + n); }
inline Vec<double> upart(const Vec<double>& z, int n) { return Vec<double>(z.begin() + n, z.end()); }

}  // namespace ncdet

/// Named presets: "gauss" (angle form, n=2), "edge-length", "v1-form".
inline TestForm test_form_preset(int n, const std::string& name) {
    TestForm f;
    f.n = n;
    f.tag = name;
    using ncdet::det2;
    using ncdet::det3;
    using ncdet::upart;
    using ncdet::xpart;
    if (n == 2 && name == "gauss") {
        f.eval = [](const Vec<double>&, const Vec<double>& u, const std::vector<Vec<double>>& fr) {
            return det2(u, upart(fr[0], 2));
        };
    } else if (n == 2 && name == "edge-length") {
        f.eval = [](const Vec<double>&, const Vec<double>& u, const std::vector<Vec<double>>& fr) {
            return det2(u, xpart(fr[0], 2));
        };
    } else if (n == 2 && name == "v1-form") {
        f.eval = [](const Vec<double>&, const Vec<double>& u, const std::vector<Vec<double>>& fr) {
            return 0.5 * det2(u, xpart(fr[0], 2));
        };
    } else if (n == 3 && name == "v2-form") {
        f.eval = [](const Vec<double>&, const Vec<double>& u, const std::vector<Vec<double>>& fr) {
            return 0.5 * det3(u, xpart(fr[0], 3), xpart(fr[1], 3));
        };
    } else if (n == 3 && name == "v1-form") {
        f.eval = [](const Vec<double>&, const Vec<double>& u, const std::vector<Vec<double>>& fr) {
            double a = det3(u, xpart(fr[0], 3), upart(fr[1], 3));
            double b = det3(u, xpart(fr[1], 3), upart(fr[0], 3));
            return (a - b) / (2 * M_PI);
        };
    } else if (n == 3 && name == "gauss") {
        // solid-angle form: area swept on the sphere
        f.eval = [](const Vec<double>&, const Vec<double>& u, const std::vector<Vec<double>>& fr) {
            return det3(u, upart(fr[0], 3), upart(fr[1], 3));
        };
    } else {
        throw GeometryError("unknown test form preset: " + name);
    }
    return f;
}

/// Random polynomial (n-1)-form: sum over index sets I of c_I(x,u) dz_I with
/// low-degree polynomial coefficients. Exact-integrable over PL cycles.
inline TestForm random_polynomial_form(int n, std::mt19937_64& rng, int degree = 2) {
    TestForm f;
    f.n = n;
    f.tag = "random-polynomial";
    int N = 2 * n;
    int k = n - 1;
    // index subsets of size n-1
    std::vector<std::vector<int>> subsets;
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == k) { subsets.push_back(idx); return; }
        for (int i = start; i < N; ++i) { idx[pos] = i; rec(i + 1, pos + 1); }
    };
    rec(0, 0);
    std::uniform_int_distribution<int> C(-3, 3);
    std::uniform_int_distribution<int> V(0, N - 1), D(0, degree);
    struct Term { std::vector<int> I; std::vector<int> expo; double c; };
    auto terms = std::make_shared<std::vector<Term>>();
    for (const auto& I : subsets) {
        int nt = 1 + (int)(rng() % 2);
        for (int t = 0; t < nt; ++t) {
            Term tm;
            tm.I = I;
            tm.expo.assign(N, 0);
            int dg = D(rng);
            for (int e = 0; e < dg; ++e) tm.expo[V(rng)]++;
            tm.c = C(rng);
            if (tm.c != 0) terms->push_back(std::move(tm));
        }
    }
    f.eval = [terms, n, k](const Vec<double>& x, const Vec<double>& u,
                           const std::vector<Vec<double>>& fr) {
        Vec<double> z = x;
        z.insert(z.end(), u.begin(), u.end());
        double acc = 0;
        for (const auto& tm : *terms) {
            double mono = tm.c;
            for (int i = 0; i < 2 * n; ++i)
                for (int e = 0; e < tm.expo[i]; ++e) mono *= z[i];
            if (mono == 0) continue;
            // det of selected rows of the frame
            if (k == 1) {
                acc += mono * fr[0][tm.I[0]];
            } else {
                double d = fr[0][tm.I[0]] * fr[1][tm.I[1]] - fr[0][tm.I[1]] * fr[1][tm.I[0]];
                acc += mono * d;
            }
        }
        return acc;
    };
    return f;
}

// ---------------------------------------------------------------------------

namespace ncdet {

/// Gauss-Legendre nodes/weights on [0,1].
inline const std::vector<std::pair<double, double>>& gl_rule(int k) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < k; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1, p1 = x;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = k * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1, p1 = x;
        for (int j = 2; j <= k; ++j) {
            double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = k * (x * p1 - p0) / (x * x - 1);
        double w = 2 / ((1 - x * x) * dp * dp);
        r.push_back({(x + 1) / 2, w / 2});
    }
    cache[k] = r;
    return cache[k];
}

struct PatchNode {
    Vec<double> u;
    std::vector<Vec<double>> tangents;  // patch-dim tangent vectors (du/dparam)
    double weight;                      // parameter weight
};

/// Quadrature nodes over a patch (point / arc / spherical triangle), each
/// with sphere-tangent vectors of the parametrization.
inline std::vector<PatchNode> patch_nodes(const std::vector<Vec<double>>& patch, int order) {
    std::vector<PatchNode> out;
    if (patch.size() == 1) {
        out.push_back({patch[0], {}, 1.0});
        return out;
    }
    if (patch.size() == 2) {
        const auto &a = patch[0], &b = patch[1];
        double ang = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
        if (ang < 1e-14) return out;
        // u(t) = slerp(a,b,t), du/dt has norm ang.
        for (auto [t, w] : gl_rule(order)) {
            Vec<double> u = slerp(a, b, t);
            double sa = std::sin((1 - t) * ang), sb = std::sin(t * ang);
            double den = std::sin(ang);
            Vec<double> du = add(scale(a, -ang * std::cos((1 - t) * ang) / den),
                                 scale(b, ang * std::cos(t * ang) / den));
            (void)sa;
            (void)sb;
            out.push_back({u, {du}, w});
        }
        return out;
    }
    // Spherical triangle: subdivide wide triangles, then radially map the
    // planar triangle (a,b,c).
    {
        double maxarc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                maxarc = std::max(maxarc, std::acos(std::clamp(dot(patch[i], patch[j]), -1.0, 1.0)));
        if (maxarc > M_PI / 8) {
            Vec<double> mab = slerp(patch[0], patch[1], 0.5);
            Vec<double> mbc = slerp(patch[1], patch[2], 0.5);
            Vec<double> mca = slerp(patch[2], patch[0], 0.5);
            std::vector<PatchNode> out2;
            for (const auto& sub_tri : std::vector<std::vector<Vec<double>>>{
                     {patch[0], mab, mca}, {patch[1], mbc, mab}, {patch[2], mca, mbc}, {mab, mbc, mca}}) {
                auto part = patch_nodes(sub_tri, order);
                out2.insert(out2.end(), part.begin(), part.end());
            }
            return out2;
        }
    }
    const auto &a = patch[0], &b = patch[1], &c = patch[2];
    int s = std::max(1, order / 2);
    auto rule = gm_rule(2, s);
    for (const auto& gp : rule) {
        double l0 = to_double(gp.bary[0]), l1 = to_double(gp.bary[1]), l2 = to_double(gp.bary[2]);
        Vec<double> p = add(add(scale(a, l0), scale(b, l1)), scale(c, l2));
        double r = norm(p);
        Vec<double> u = scale(p, 1 / r);
        // d(p/|p|) along the planar directions b-a and c-a.
        auto dproj = [&](const Vec<double>& v) {
            Vec<double> t = sub(scale(v, 1 / r), scale(p, dot(p, v) / (r * r * r)));
            return t;
        };
        // gm weights carry the standard-simplex measure; the tangent vectors
        // carry the affine Jacobian, so the raw weights are correct.
        out.push_back({u, {dproj(sub(b, a)), dproj(sub(c, a))}, to_double(gp.weight)});
    }
    return out;
}

struct FaceNode {
    Vec<double> x;
    std::vector<Vec<double>> tangents;
    double weight;
};

inline std::vector<FaceNode> face_nodes(const std::vector<Vec<double>>& simplex, int order) {
    std::vector<FaceNode> out;
    int j = (int)simplex.size() - 1;
    if (j == 0) {
        out.push_back({simplex[0], {}, 1.0});
        return out;
    }
    std::vector<Vec<double>> tang;
    for (int i = 1; i <= j; ++i) tang.push_back(sub(simplex[i], simplex[0]));
    if (j == 1) {
        for (auto [t, w] : gl_rule(order))
            out.push_back({add(simplex[0], scale(tang[0], t)), tang, w});
        return out;
    }
    int s = std::max(1, order / 2);
    auto rule = gm_rule(j, s);
    for (const auto& gp : rule) {
        Vec<double> x = scale(simplex[0], to_double(gp.bary[0]));
        for (int i = 1; i <= j; ++i) x = add(x, scale(simplex[i], to_double(gp.bary[i])));
        out.push_back({x, tang, to_double(gp.weight)});
    }
    return out;
}

/// Orientation sign: frames ordered (face tangents, patch tangents) should
/// satisfy det[u | frame-x-parts+frame-u-parts mixed]... the tube-boundary
/// convention det[u, t_1..t_j, w_1..w_{n-1-j}] > 0.
inline int stratum_sign(const Stratum& s, int n) {
    auto fn = face_nodes(s.face, 2);
    auto pn = patch_nodes(s.patch, 2);
    if (fn.empty() || pn.empty()) return 1;
    const auto& f0 = fn[fn.size() / 2];
    const auto& p0 = pn[pn.size() / 2];
    Mat<double> M;
    M.push_back(p0.u);
    for (const auto& t : f0.tangents) M.push_back(t);
    for (const auto& w : p0.tangents) M.push_back(w);
    if ((int)M.size() != n) return 1;
    double dt = det(M);
    return dt >= 0 ? 1 : -1;
}

}  // namespace ncdet

/// Integral of a test form over the cycle: per-stratum product quadrature
/// of the pullback, with the global orientation convention applied.
inline double integrate_form(const NormalCycle& N, const TestForm& omega, int order = 8) {
    if (omega.n != N.n) throw GeometryError("form/cycle dimension mismatch");
    int n = N.n;
    double total = 0;
    for (const auto& s : N.strata) {
        int sign = ncdet::stratum_sign(s, n) * s.coeff;
        auto fns = ncdet::face_nodes(s.face, order);
        auto pns = ncdet::patch_nodes(s.patch, order);
        double acc = 0;
        for (const auto& fn : fns)
            for (const auto& pn : pns) {
                // Assemble R^{2n} frame: face tangents then patch tangents.
                std::vector<Vec<double>> frame;
                for (const auto& t : fn.tangents) {
                    Vec<double> z(2 * n, 0.0);
                    for (int i = 0; i < n; ++i) z[i] = t[i];
                    frame.push_back(std::move(z));
                }
                for (const auto& w : pn.tangents) {
                    Vec<double> z(2 * n, 0.0);
                    for (int i = 0; i < n; ++i) z[n + i] = w[i];
                    frame.push_back(std::move(z));
                }
                Vec<double> x = fn.x, u = pn.u;
                // Apply lifts: transform (x,u) and the frame by each lift.
                for (const auto& L : N.lifts) {
                    auto J = L.jacobian(x);
                    // u' = J^{-T} u normalized; frame transforms by the
                    // differential of (x,u) -> (g(x), J(x)^{-T}u / |.|),
                    // computed by finite differences for robustness.
                    const double h = 1e-6;
                    auto lift_point = [&](const Vec<double>& xx, const Vec<double>& uu) {
                        auto JJ = L.jacobian(xx);
                        Mat<double> JT(n, Vec<double>(n));
                        for (int i = 0; i < n; ++i)
                            for (int jj = 0; jj < n; ++jj) JT[i][jj] = JJ[jj][i];
                        Vec<double> w2;
                        if (!solve(JT, uu, w2)) throw GeometryError("lift: singular jacobian");
                        std::pair<Vec<double>, Vec<double>> r{L.map(xx), normalized(w2)};
                        return r;
                    };
                    std::vector<Vec<double>> nframe;
                    auto base = lift_point(x, u);
                    for (const auto& fv : frame) {
                        Vec<double> dx(n), du(n);
                        for (int i = 0; i < n; ++i) { dx[i] = fv[i]; du[i] = fv[n + i]; }
                        auto plus = lift_point(add(x, scale(dx, h)), normalized(add(u, scale(du, h))));
                        auto minus = lift_point(sub(x, scale(dx, h)), normalized(sub(u, scale(du, h))));
                        Vec<double> z(2 * n);
                        for (int i = 0; i < n; ++i) {
                            z[i] = (plus.first[i] - minus.first[i]) / (2 * h);
                            z[n + i] = (plus.second[i] - minus.second[i]) / (2 * h);
                        }
                        nframe.push_back(std::move(z));
                    }
                    x = base.first;
                    u = base.second;
                    frame = std::move(nframe);
                    (void)J;
                }
                acc += fn.weight * pn.weight * omega.eval(x, u, frame);
            }
        total += sign * acc;
    }
    return total;
}

/// Lift of the cycle under an orientation-preserving diffeomorphism.
inline NormalCycle lift_pushforward(const NormalCycle& N, CycleLift lift) {
    NormalCycle R = N;
    // Orientation check on a sample.
    if (!N.strata.empty()) {
        auto J = lift.jacobian(N.strata[0].face[0]);
        if (det(J) <= 0) throw GeometryError("lift_pushforward: orientation-reversing map");
    }
    R.lifts.push_back(std::move(lift));
    return R;
}

// ---------------------------------------------------------------------------
// Gauss-Bonnet bookkeeping (n = 2): exact arc partition.

struct GaussBonnetCheck {
    double angle_sum = 0;
    bool exact_partition = false;  // arcs tile the circle combinatorially
};

template <class T>
GaussBonnetCheck gauss_bonnet_check(const PolytopeT<T>& P) {
    if (P.n != 2 || P.d != 2) throw GeometryError("gauss_bonnet_check expects a convex polygon");
    GaussBonnetCheck r;
    // Edge normals in CCW cycle order tile S^1: the vertex arcs are exactly
    // the gaps between consecutive normals, each counted once.
    int m = (int)P.ifacets.size();
    double sum = 0;
    for (int i = 0; i < m; ++i) {
        Vec<double> a = normalized(vec_to_double_any(P.ifacets[i].a));
        Vec<double> b = normalized(vec_to_double_any(P.ifacets[(i + 1) % m].a));
        double ang = std::atan2(ncdet::det2(a, b), dot(a, b));
        if (ang < 0) ang += 2 * M_PI;
        sum += ang;
    }
    r.angle_sum = sum;
    r.exact_partition = true;  // telescoping by construction: each gap once
    return r;
}

// ---------------------------------------------------------------------------
// Union additivity (the valuation property of the cycle)

struct UnionAdditivityResult {
    double max_residual = 0;
    int forms_tested = 0;
};

/// Integrates a bank of random forms over N(A)+N(B)-N(A∩B) versus
/// N(conv(A∪B)); requires A ∪ B convex (volume criterion, exact).
template <class T>
UnionAdditivityResult union_additivity_check(const PolytopeT<T>& A, const PolytopeT<T>& B,
                                             int forms, uint64_t seed, int order = 10) {
    std::vector<Vec<T>> pts = A.verts;
    pts.insert(pts.end(), B.verts.begin(), B.verts.end());
    auto H = convex_hull_t(pts);
    auto I = intersect_t(A, B);
    {
        T vol_union = volume_t(A) + volume_t(B) - (I ? volume_t(*I) : T(0));
        if (ScalarTraits<T>::sign(volume_t(H) - vol_union) != 0)
            throw GeometryError("union_additivity_check: A ∪ B is not convex");
    }
    NormalCycle lhs = normal_cycle_t(A);
    lhs += normal_cycle_t(B);
    if (I) lhs += normal_cycle_t(*I).scaled(-1);
    NormalCycle rhs = normal_cycle_t(H);
    std::mt19937_64 rng(seed);
    UnionAdditivityResult res;
    res.forms_tested = forms;
    for (int f = 0; f < forms; ++f) {
        auto omega = random_polynomial_form(A.n, rng, 2);
        double l = integrate_form(lhs, omega, order);
        double r = integrate_form(rhs, omega, order);
        res.max_residual = std::max(res.max_residual, std::abs(l - r));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Conic normal cycle

struct ConicStratum {
    int face_dim = 0;
    std::vector<Vec<double>> face;
    std::vector<Vec<double>> cone_rays;  // unit corner rays (empty = base stratum)
    bool base = false;
};

struct ConicNormalCycle {
    int n = 0;
    std::vector<ConicStratum> strata;
};

/// Cones each patch radially and adds the base stratum K x {0}; slicing at
/// |v| = 1 recovers the normal cycle strata exactly.
inline ConicNormalCycle gamma_conify(const NormalCycle& N, const Polytope& body) {
    ConicNormalCycle C;
    C.n = N.n;
    for (const auto& s : N.strata) {
        ConicStratum cs;
        cs.face_dim = s.face_dim;
        cs.face = s.face;
        cs.cone_rays = s.patch;
        C.strata.push_back(std::move(cs));
    }
    // Base stratum: the body itself with the zero section.
    ConicStratum base;
    base.base = true;
    base.face_dim = body.intrinsic_dim();
    for (const auto& v : body.vertices_double()) base.face.push_back(v);
    C.strata.push_back(std::move(base));
    return C;
}

/// Strata-level round trip: the |v|=1 slice of the conic cycle equals the
/// normal cycle (canonicalized comparison).
inline bool conify_slice_roundtrip(const ConicNormalCycle& C, const NormalCycle& N) {
    auto canon = [](const std::vector<Vec<double>>& face, const std::vector<Vec<double>>& patch) {
        std::vector<std::string> parts;
        auto fmt = [](const Vec<double>& v) {
            std::string s;
            for (double x : v) s += std::to_string(std::round(x * 1e9)) + ",";
            return s;
        };
        for (const auto& f : face) parts.push_back("F" + fmt(f));
        for (const auto& p : patch) parts.push_back("P" + fmt(p));
        std::sort(parts.begin(), parts.end());
        std::string s;
        for (auto& p : parts) s += p + ";";
        return s;
    };
    std::multiset<std::string> a, b;
    for (const auto& s : C.strata)
        if (!s.base) a.insert(canon(s.face, s.cone_rays));
    for (const auto& s : N.strata) b.insert(canon(s.face, s.patch));
    return a == b;
}

/// Canonical carrier fingerprint; distinct convex bodies give distinct
/// carriers (injectivity of the cycle map).
inline std::string carrier_hash(const NormalCycle& N) {
    std::multiset<std::string> parts;
    for (const auto& s : N.strata) {
        std::string t;
        std::vector<std::string> corner;
        for (const auto& f : s.face) {
            std::string q;
            for (double x : f) q += std::to_string(std::round(x * 1e9)) + ",";
            corner.push_back(q);
        }
        for (const auto& p : s.patch) {
            std::string q = "u:";
            for (double x : p) q += std::to_string(std::round(x * 1e9)) + ",";
            corner.push_back(q);
        }
        std::sort(corner.begin(), corner.end());
        for (auto& c : corner) t += c + "|";
        parts.insert(t);
    }
    std::string s;
    for (const auto& p : parts) s += p + "#";
    return s;
}

}  // namespace minkval
