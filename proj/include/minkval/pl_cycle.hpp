#pragma once

#include "minkval/normal_cycle.hpp"

namespace minkval {

/// Convex piecewise-linear function: max over affine pieces <g,x> + c.
struct PLConvexFunction {
    int d = 1;
    std::vector<std::pair<Vec<Rat>, Rat>> pieces;
    Vec<Rat> bbox_lo, bbox_hi;  // default [-10,10]^d

    static PLConvexFunction make(int d, std::vector<std::pair<Vec<Rat>, Rat>> pieces,
                                 double box = 10.0) {
        PLConvexFunction f;
        f.d = d;
        f.pieces = std::move(pieces);
        f.bbox_lo.assign(d, rat_of_double(-box));
        f.bbox_hi.assign(d, rat_of_double(box));
        f.prune_inactive();
        if (f.pieces.empty()) throw GeometryError("PL function needs at least one piece");
        return f;
    }

    Rat eval(const Vec<Rat>& x) const {
        if (pieces.empty()) throw GeometryError("PL function has no active pieces");
        Rat best = dot(pieces[0].first, x) + pieces[0].second;
        for (size_t i = 1; i < pieces.size(); ++i) {
            Rat v = dot(pieces[i].first, x) + pieces[i].second;
            if (v > best) best = v;
        }
        return best;
    }

    std::vector<std::pair<Vec<Rat>, Rat>> bbox_halfspaces() const {
        std::vector<std::pair<Vec<Rat>, Rat>> hs;
        for (int i = 0; i < d; ++i) {
            Vec<Rat> e = vec_zero<Rat>(d);
            e[i] = Rat(1);
            hs.push_back({e, bbox_hi[i]});
            e[i] = Rat(-1);
            hs.push_back({e, -bbox_lo[i]});
        }
        return hs;
    }

    /// Halfspace system of the linearity region of piece i (within the box).
    std::vector<std::pair<Vec<Rat>, Rat>> region_halfspaces(size_t i) const {
        auto hs = bbox_halfspaces();
        for (size_t j = 0; j < pieces.size(); ++j) {
            if (j == i) continue;
            hs.push_back({sub(pieces[j].first, pieces[i].first), pieces[i].second - pieces[j].second});
        }
        return hs;
    }

    void prune_inactive() {
        // Dedupe first: identical pieces would otherwise prune each other.
        std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
        pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
        std::vector<std::pair<Vec<Rat>, Rat>> kept;
        for (size_t i = 0; i < pieces.size(); ++i) {
            auto [t, x] = max_slack_point(region_halfspaces_for(pieces, i, *this), d);
            if (sgn(t) > 0) kept.push_back(pieces[i]);
        }
        pieces = std::move(kept);
    }

  private:
    static std::vector<std::pair<Vec<Rat>, Rat>> region_halfspaces_for(
        const std::vector<std::pair<Vec<Rat>, Rat>>& pieces, size_t i, const PLConvexFunction& f) {
        auto hs = f.bbox_halfspaces();
        for (size_t j = 0; j < pieces.size(); ++j) {
            if (j == i) continue;
            hs.push_back({sub(pieces[j].first, pieces[i].first), pieces[i].second - pieces[j].second});
        }
        return hs;
    }
};

inline PLConvexFunction pl_max(const PLConvexFunction& f, const PLConvexFunction& g) {
    auto pieces = f.pieces;
    pieces.insert(pieces.end(), g.pieces.begin(), g.pieces.end());
    PLConvexFunction h;
    h.d = f.d;
    h.pieces = std::move(pieces);
    h.bbox_lo = f.bbox_lo;
    h.bbox_hi = f.bbox_hi;
    h.prune_inactive();
    return h;
}

/// min(f,g) as a convex PL function; throws when the minimum is not convex
/// (validated exactly on the common refinement).
inline PLConvexFunction pl_min_convex(const PLConvexFunction& f, const PLConvexFunction& g) {
    int d = f.d;
    auto minval = [&](const Vec<Rat>& x) { return std::min(f.eval(x), g.eval(x)); };
    // Candidate pieces: those lying below min everywhere (checked on the
    // refinement cell vertices).
    std::vector<Vec<Rat>> check_pts;
    for (size_t i = 0; i < f.pieces.size(); ++i)
        for (size_t j = 0; j < g.pieces.size(); ++j) {
            auto hs = f.region_halfspaces(i);
            auto hs2 = g.region_halfspaces(j);
            hs.insert(hs.end(), hs2.begin(), hs2.end());
            auto [t, x0] = max_slack_point(hs, d);
            if (sgn(t) <= 0) continue;
            auto R = halfspace_intersection_t(hs, std::optional<Vec<Rat>>(x0));
            for (const auto& v : R.verts) check_pts.push_back(v);
            check_pts.push_back(x0);
        }
    std::vector<std::pair<Vec<Rat>, Rat>> cand = f.pieces;
    cand.insert(cand.end(), g.pieces.begin(), g.pieces.end());
    std::vector<std::pair<Vec<Rat>, Rat>> below;
    for (const auto& p : cand) {
        bool ok = true;
        for (const auto& x : check_pts)
            if (dot(p.first, x) + p.second > minval(x)) { ok = false; break; }
        if (ok) below.push_back(p);
    }
    PLConvexFunction h;
    h.d = d;
    h.pieces = below;
    h.bbox_lo = f.bbox_lo;
    h.bbox_hi = f.bbox_hi;
    if (below.empty()) throw GeometryError("min(f,g) is not convex");
    h.prune_inactive();
    for (const auto& x : check_pts)
        if (h.eval(x) != minval(x)) throw GeometryError("min(f,g) is not convex");
    return h;
}

// ---------------------------------------------------------------------------
// Differential cycle of a convex PL function

struct DifferentialCycle {
    int d = 1;

    enum class Kind { Horizontal, VerticalEdge, VertexCell };
    struct Cell {
        Kind kind;
        PolytopeT<Rat> base;   // region / shared face / vertex
        PolytopeT<Rat> dual;   // gradient point / segment / polygon
        // Orientation data for VerticalEdge cells: directed base edge and
        // directed dual segment.
        Vec<Rat> base_dir_from, base_dir_to;
        Vec<Rat> dual_from, dual_to;
    };
    std::vector<Cell> cells;
    Vec<Rat> bbox_lo, bbox_hi;
};

namespace pldet {

/// All full-dimensional linearity regions (piece index -> region polytope).
inline std::vector<std::pair<size_t, PolytopeT<Rat>>> regions(const PLConvexFunction& f) {
    std::vector<std::pair<size_t, PolytopeT<Rat>>> out;
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        auto hs = f.region_halfspaces(i);
        auto [t, x0] = max_slack_point(hs, f.d);
        if (sgn(t) <= 0) continue;
        out.push_back({i, halfspace_intersection_t(hs, std::optional<Vec<Rat>>(x0))});
    }
    return out;
}

/// Directed edge (u -> v) in CCW boundary order of polygon R; returns false
/// if (u,v) is not an edge of R.
inline bool ccw_edge_direction(const PolytopeT<Rat>& R, const Vec<Rat>& a, const Vec<Rat>& b,
                               Vec<Rat>& from, Vec<Rat>& to) {
    int m = (int)R.verts.size();
    for (int i = 0; i < m; ++i) {
        const auto& u = R.verts[i];
        const auto& v = R.verts[(i + 1) % m];
        if ((u == a && v == b)) { from = a; to = b; return true; }
        if ((u == b && v == a)) { from = b; to = a; return true; }
    }
    return false;
}

}  // namespace pldet

/// Cell structure of the differential cycle of a convex PL function:
/// horizontal cells (region x gradient), vertical cells over shared faces,
/// and (d=2) vertex cells carrying the local gradient polygon.
inline DifferentialCycle differential_cycle(const PLConvexFunction& f) {
    DifferentialCycle D;
    D.d = f.d;
    D.bbox_lo = f.bbox_lo;
    D.bbox_hi = f.bbox_hi;
    auto regs = pldet::regions(f);
    if (regs.empty()) throw GeometryError("differential cycle: no full-dimensional region");

    auto grad_pt = [&](size_t pi) { return convex_hull_t<Rat>({f.pieces[pi].first}); };

    for (auto& [pi, R] : regs) {
        DifferentialCycle::Cell c;
        c.kind = DifferentialCycle::Kind::Horizontal;
        c.base = R;
        c.dual = grad_pt(pi);
        D.cells.push_back(std::move(c));
    }

    if (f.d == 1) {
        // Breakpoints: adjacent regions sorted by position.
        std::vector<std::pair<Rat, std::pair<size_t, size_t>>> breaks;  // (x*, (left,right))
        std::vector<std::tuple<Rat, Rat, size_t>> ivals;                // (lo, hi, piece)
        for (auto& [pi, R] : regs) ivals.push_back({R.verts[0][0], R.verts[1][0], pi});
        std::sort(ivals.begin(), ivals.end());
        for (size_t k = 0; k + 1 < ivals.size(); ++k) {
            auto [lo1, hi1, p1] = ivals[k];
            auto [lo2, hi2, p2] = ivals[k + 1];
            if (hi1 != lo2) throw GeometryError("pl regions do not tile the interval");
            DifferentialCycle::Cell c;
            c.kind = DifferentialCycle::Kind::VerticalEdge;
            c.base = make_point<Rat>({hi1});
            // slopes increase left to right for convex f
            c.dual = make_segment<Rat>({f.pieces[p1].first[0]}, {f.pieces[p2].first[0]});
            c.dual_from = {f.pieces[p1].first[0]};
            c.dual_to = {f.pieces[p2].first[0]};
            D.cells.push_back(std::move(c));
        }
        return D;
    }

    // d == 2: shared edges and interior vertices.
    struct EdgeRec {
        Vec<Rat> a, b;
        std::vector<size_t> pieces;
    };
    std::vector<EdgeRec> shared;
    auto add_shared = [&](const Vec<Rat>& a, const Vec<Rat>& b, size_t pi) {
        for (auto& e : shared) {
            if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) {
                if (std::find(e.pieces.begin(), e.pieces.end(), pi) == e.pieces.end())
                    e.pieces.push_back(pi);
                return;
            }
        }
        shared.push_back({a, b, {pi}});
    };
    for (auto& [pi, R] : regs) {
        int m = (int)R.verts.size();
        for (int i = 0; i < m; ++i) add_shared(R.verts[i], R.verts[(i + 1) % m], pi);
    }
    for (auto& e : shared) {
        if (e.pieces.size() != 2) continue;  // bbox wall edge
        size_t pi = e.pieces[0], pj = e.pieces[1];
        // Direct the edge CCW w.r.t. region pj.
        const PolytopeT<Rat>* Rj = nullptr;
        for (auto& [q, R] : regs)
            if (q == pj) Rj = &R;
        DifferentialCycle::Cell c;
        c.kind = DifferentialCycle::Kind::VerticalEdge;
        Vec<Rat> from, to;
        if (!pldet::ccw_edge_direction(*Rj, e.a, e.b, from, to))
            throw GeometryError("shared edge not found on region boundary");
        c.base = make_segment<Rat>(e.a, e.b);
        c.base_dir_from = from;
        c.base_dir_to = to;
        c.dual = make_segment<Rat>(f.pieces[pi].first, f.pieces[pj].first);
        c.dual_from = f.pieces[pi].first;
        c.dual_to = f.pieces[pj].first;
        D.cells.push_back(std::move(c));
    }
    // Interior vertices: points where >= 3 regions meet.
    std::map<std::vector<std::string>, std::pair<Vec<Rat>, std::vector<size_t>>> vmap;
    auto key_of = [](const Vec<Rat>& v) {
        std::vector<std::string> k;
        for (const auto& c : v) k.push_back(c.get_str());
        return k;
    };
    for (auto& [pi, R] : regs)
        for (const auto& v : R.verts) {
            auto key = key_of(v);
            auto it = vmap.find(key);
            if (it == vmap.end()) vmap[key] = {v, {pi}};
            else if (std::find(it->second.second.begin(), it->second.second.end(), pi) ==
                     it->second.second.end())
                it->second.second.push_back(pi);
        }
    for (auto& [key, rec] : vmap) {
        auto& [v, pis] = rec;
        if (pis.size() < 3) continue;
        bool on_wall = false;
        for (int i = 0; i < f.d; ++i)
            if (v[i] == f.bbox_lo[i] || v[i] == f.bbox_hi[i]) on_wall = true;
        if (on_wall) continue;
        std::vector<Vec<Rat>> grads;
        for (size_t pi : pis) grads.push_back(f.pieces[pi].first);
        auto G = convex_hull_t(grads);
        if (G.d != 2) continue;  // degenerate gradient configuration
        DifferentialCycle::Cell c;
        c.kind = DifferentialCycle::Kind::VertexCell;
        c.base = make_point<Rat>(v);
        c.dual = G;
        D.cells.push_back(std::move(c));
    }
    return D;
}

// ---------------------------------------------------------------------------
// Exact integration of polynomial forms over the cycle and the closedness
// check.

/// d-form on R^{2d} with exact rational polynomial coefficients:
/// sum_T c_T z^expo dz_{I_T}.
struct RatPolyForm {
    int d = 1;
    struct Term {
        std::vector<int> I;     // d indices in 0..2d-1, strictly increasing
        std::vector<int> expo;  // exponent per z coordinate (2d entries)
        Rat c;
    };
    std::vector<Term> terms;
};

inline RatPolyForm random_rat_form(int d, std::mt19937_64& rng, int degree = 2) {
    RatPolyForm f;
    f.d = d;
    int N = 2 * d;
    std::vector<std::vector<int>> subsets;
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == d) { subsets.push_back(idx); return; }
        for (int i = start; i < N; ++i) { idx[pos] = i; rec(i + 1, pos + 1); }
    };
    rec(0, 0);
    std::uniform_int_distribution<int> C(-3, 3), V(0, N - 1), Dg(0, degree);
    for (const auto& I : subsets) {
        int nt = 1 + (int)(rng() % 2);
        for (int t = 0; t < nt; ++t) {
            RatPolyForm::Term tm;
            tm.I = I;
            tm.expo.assign(N, 0);
            int dg = Dg(rng);
            for (int e = 0; e < dg; ++e) tm.expo[V(rng)]++;
            tm.c = Rat(C(rng));
            if (sgn(tm.c) != 0) f.terms.push_back(std::move(tm));
        }
    }
    return f;
}

namespace pldet {

/// Oriented parametrized piece: z(s,t) = z0 + sum s_r X_r + sum t_r Y_r over
/// (standard simplex in s) x (standard simplex in t).
struct Piece {
    Vec<Rat> z0;
    std::vector<Vec<Rat>> xspan, yspan;
    int coeff = 1;
};

/// Exact integral of the form over one piece.
inline Rat integrate_piece(const RatPolyForm& f, const Piece& pc) {
    int d = f.d;
    int a = (int)pc.xspan.size(), b = (int)pc.yspan.size();
    if (a + b != d) throw GeometryError("piece dimension mismatch");
    // Frame matrix columns: xspan then yspan (vectors in R^{2d}).
    std::vector<Vec<Rat>> frame = pc.xspan;
    frame.insert(frame.end(), pc.yspan.begin(), pc.yspan.end());
    Rat total(0);
    // Affine substitution z = z0 + [frame] * params.
    Mat<Rat> M(2 * d, Vec<Rat>(d, Rat(0)));
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < 2 * d; ++r) M[r][c] = frame[c][r];
    for (const auto& tm : f.terms) {
        // det of rows I of the frame.
        Mat<Rat> sel(d, Vec<Rat>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) sel[r][c] = frame[c][tm.I[r]];
        Rat dt = det(sel);
        if (sgn(dt) == 0) continue;
        // Monomial z^expo as a polynomial in params.
        Poly<Rat> mono = Poly<Rat>::constant(d, tm.c);
        for (int i = 0; i < 2 * d; ++i) {
            if (tm.expo[i] == 0) continue;
            Poly<Rat> lin = Poly<Rat>::constant(d, pc.z0[i]);
            for (int c = 0; c < d; ++c)
                if (sgn(M[i][c]) != 0) lin += Poly<Rat>::variable(d, c).scaled(M[i][c]);
            for (int e = 0; e < tm.expo[i]; ++e) mono = mono * lin;
        }
        // Integrate over simplex(s-part) x simplex(t-part).
        Rat acc(0);
        for (const auto& [e, coef] : mono.terms) {
            std::vector<int> es(e.begin(), e.begin() + a);
            std::vector<int> et(e.begin() + a, e.end());
            acc += coef * simplex_monomial_integral<Rat>(a, es) * simplex_monomial_integral<Rat>(b, et);
        }
        total += dt * acc;
    }
    return total * Rat(pc.coeff);
}

/// Decomposes a cycle cell into oriented pieces.
inline std::vector<Piece> cell_pieces(const DifferentialCycle::Cell& c, int d) {
    std::vector<Piece> out;
    auto embed = [&](const Vec<Rat>& x, bool dual) {
        Vec<Rat> z(2 * d, Rat(0));
        for (int i = 0; i < d; ++i) z[dual ? d + i : i] = x[i];
        return z;
    };
    using Kind = DifferentialCycle::Kind;
    if (c.kind == Kind::Horizontal) {
        // CCW fan triangulation of the base polygon (d=2) or the interval (d=1).
        const auto& g = c.dual.verts[0];
        if (d == 1) {
            Piece p;
            p.z0 = embed(c.base.verts[0], false);
            for (int i = 0; i < 1; ++i) p.z0[d + i] += g[i];
            p.xspan = {embed(sub(c.base.verts[1], c.base.verts[0]), false)};
            out.push_back(std::move(p));
        } else {
            const auto& cyc = c.base.verts;  // CCW from the lattice
            for (size_t i = 1; i + 1 < cyc.size(); ++i) {
                Piece p;
                p.z0 = embed(cyc[0], false);
                for (int k = 0; k < d; ++k) p.z0[d + k] += g[k];
                p.xspan = {embed(sub(cyc[i], cyc[0]), false), embed(sub(cyc[i + 1], cyc[0]), false)};
                out.push_back(std::move(p));
            }
        }
        return out;
    }
    if (c.kind == Kind::VerticalEdge) {
        Piece p;
        const auto& g0 = c.dual_from;
        const auto& g1 = c.dual_to;
        if (d == 1) {
            p.z0 = embed(c.base.verts[0], false);
            for (int i = 0; i < d; ++i) p.z0[d + i] += g0[i];
            p.yspan = {embed(sub(g1, g0), true)};
            out.push_back(std::move(p));
        } else {
            p.z0 = embed(c.base_dir_from, false);
            for (int i = 0; i < d; ++i) p.z0[d + i] += g0[i];
            p.xspan = {embed(sub(c.base_dir_to, c.base_dir_from), false)};
            p.yspan = {embed(sub(g1, g0), true)};
            out.push_back(std::move(p));
        }
        return out;
    }
    // VertexCell (d == 2): {x} x CCW polygon fan.
    const auto& x = c.base.verts[0];
    const auto& cyc = c.dual.verts;
    for (size_t i = 1; i + 1 < cyc.size(); ++i) {
        Piece p;
        p.z0 = embed(x, false);
        for (int k = 0; k < d; ++k) p.z0[d + k] += cyc[0][k];
        p.yspan = {embed(sub(cyc[i], cyc[0]), true), embed(sub(cyc[i + 1], cyc[0]), true)};
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace pldet

/// Exact integral of a rational polynomial d-form over the cycle.
inline Rat integrate_form_exact(const DifferentialCycle& D, const RatPolyForm& f) {
    Rat acc(0);
    for (const auto& c : D.cells)
        for (const auto& pc : pldet::cell_pieces(c, D.d)) acc += pldet::integrate_piece(f, pc);
    return acc;
}

// ---------------------------------------------------------------------------
// Closedness: the formal boundary of the cell complex cancels away from the
// bounding-box walls.

namespace pldet {

struct BoundaryKey {
    std::string repr;
    bool operator<(const BoundaryKey& o) const { return repr < o.repr; }
};

inline std::string fmt_pt(const Vec<Rat>& v) {
    std::string s;
    for (const auto& c : v) s += c.get_str() + ",";
    return s;
}

/// Canonical boundary piece: product of a point/segment in base and
/// point/segment in dual with a sign normalizing segment direction.
inline void add_boundary(std::map<std::string, long>& acc, const Vec<Rat>& b0,
                         const Vec<Rat>* b1, const Vec<Rat>& d0, const Vec<Rat>* d1, long coeff) {
    int flip = 1;
    std::string s = "B:";
    if (b1) {
        const Vec<Rat>*lo = &b0, *hi = b1;
        if (!(b0 < *b1)) { lo = b1; hi = &b0; flip = -flip; }
        s += fmt_pt(*lo) + "->" + fmt_pt(*hi);
    } else {
        s += fmt_pt(b0);
    }
    s += "|D:";
    if (d1) {
        const Vec<Rat>*lo = &d0, *hi = d1;
        if (!(d0 < *d1)) { lo = d1; hi = &d0; flip = -flip; }
        s += fmt_pt(*lo) + "->" + fmt_pt(*hi);
    } else {
        s += fmt_pt(d0);
    }
    acc[s] += coeff * flip;
}

}  // namespace pldet

/// True when the interior formal boundary cancels exactly (pieces supported
/// on the bbox walls are ignored).
inline bool closedness_check(const DifferentialCycle& D) {
    std::map<std::string, long> acc;
    int d = D.d;
    auto on_wall_pt = [&](const Vec<Rat>& x) {
        for (int i = 0; i < d; ++i)
            if (x[i] == D.bbox_lo[i] || x[i] == D.bbox_hi[i]) return true;
        return false;
    };
    auto on_wall_seg = [&](const Vec<Rat>& a, const Vec<Rat>& b) {
        for (int i = 0; i < d; ++i) {
            if (a[i] == D.bbox_lo[i] && b[i] == D.bbox_lo[i]) return true;
            if (a[i] == D.bbox_hi[i] && b[i] == D.bbox_hi[i]) return true;
        }
        return false;
    };
    using Kind = DifferentialCycle::Kind;
    for (const auto& c : D.cells) {
        if (c.kind == Kind::Horizontal) {
            const auto& g = c.dual.verts[0];
            if (d == 1) {
                // del([a,b] x {g}) = (b,g) - (a,g)
                if (!on_wall_pt(c.base.verts[1]))
                    pldet::add_boundary(acc, c.base.verts[1], nullptr, g, nullptr, +1);
                if (!on_wall_pt(c.base.verts[0]))
                    pldet::add_boundary(acc, c.base.verts[0], nullptr, g, nullptr, -1);
            } else {
                const auto& cyc = c.base.verts;
                int m = (int)cyc.size();
                for (int i = 0; i < m; ++i) {
                    const auto& a = cyc[i];
                    const auto& b = cyc[(i + 1) % m];
                    if (on_wall_seg(a, b)) continue;
                    // directed edge a->b, CCW
                    int flip = a < b ? 1 : -1;
                    (void)flip;
                    pldet::add_boundary(acc, a, &b, g, nullptr, +1);
                }
            }
        } else if (c.kind == Kind::VerticalEdge) {
            const auto& g0 = c.dual_from;
            const auto& g1 = c.dual_to;
            if (d == 1) {
                const auto& x = c.base.verts[0];
                // del({x} x [g0,g1]) = (x,g1) - (x,g0)
                pldet::add_boundary(acc, x, nullptr, g1, nullptr, +1);
                pldet::add_boundary(acc, x, nullptr, g0, nullptr, -1);
            } else {
                const auto& a = c.base_dir_from;
                const auto& b = c.base_dir_to;
                // del(e x G) = (del e) x G - e x (del G)
                if (!on_wall_pt(b)) pldet::add_boundary(acc, b, nullptr, g0, &g1, +1);
                if (!on_wall_pt(a)) pldet::add_boundary(acc, a, nullptr, g0, &g1, -1);
                if (!on_wall_seg(a, b)) {
                    pldet::add_boundary(acc, a, &b, g1, nullptr, -1);
                    pldet::add_boundary(acc, a, &b, g0, nullptr, +1);
                }
            }
        } else {
            const auto& x = c.base.verts[0];
            const auto& cyc = c.dual.verts;
            int m = (int)cyc.size();
            for (int i = 0; i < m; ++i)
                pldet::add_boundary(acc, x, nullptr, cyc[i], &cyc[(i + 1) % m], +1);
        }
    }
    for (const auto& [k, v] : acc)
        if (v != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------

struct MaxMinReport {
    Rat max_residual;
    bool closed = false;
    int forms = 0;
};

/// Integrates random rational forms over D(max)+D(min) vs D(f)+D(g);
/// exact-zero residual expected.
inline MaxMinReport maxmin_additivity_check(const PLConvexFunction& f, const PLConvexFunction& g,
                                            int forms, uint64_t seed) {
    auto fx = pl_max(f, g);
    auto fn = pl_min_convex(f, g);
    auto Dmax = differential_cycle(fx), Dmin = differential_cycle(fn);
    auto Df = differential_cycle(f), Dg = differential_cycle(g);
    MaxMinReport rep;
    rep.max_residual = Rat(0);
    rep.forms = forms;
    rep.closed = closedness_check(Dmax) && closedness_check(Dmin) && closedness_check(Df) &&
                 closedness_check(Dg);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < forms; ++i) {
        auto omega = random_rat_form(f.d, rng, 2);
        Rat lhs = integrate_form_exact(Dmax, omega) + integrate_form_exact(Dmin, omega);
        Rat rhs = integrate_form_exact(Df, omega) + integrate_form_exact(Dg, omega);
        Rat r = lhs - rhs;
        if (sgn(r) < 0) r = -r;
        if (r > rep.max_residual) rep.max_residual = r;
    }
    return rep;
}

}  // namespace minkval
