#pragma once

#include "minkval/normal_cycle.hpp"

namespace minkval {

/// xi(h, p, u, t) = p + t grad h(u).
inline Vec<double> tube_map(const SupportBody& body, const Vec<double>& p, const Vec<double>& u,
                            double t) {
    return add(p, scale(body.grad(u), t));
}

struct TubeJacobianFlip : GeometryError {
    TubeJacobianFlip()
        : GeometryError(
              "tube jacobian changed sign: scale too large for injectivity "
              "(epsilon must stay below reach * min curvature)") {}
};

namespace tubedet {

/// Integral over N(K) x (0,1] of the pullback of the density mu under
/// (p,u,t) -> p + t grad h(u), h = sum lam_i h_i. The determinant is the
/// n x n matrix of partials; a sign flip inside a stratum raises.
inline double tube_integral(const NormalCycle& N, const Density& mu,
                            const std::vector<const HomogeneousFn*>& fns,
                            const std::vector<double>& lam, int order) {
    int n = N.n;
    auto grad_sum = [&](const Vec<double>& u) {
        Vec<double> g(n, 0.0);
        for (size_t i = 0; i < fns.size(); ++i) {
            if (lam[i] == 0) continue;
            g = add(g, scale(fns[i]->grad(u), lam[i]));
        }
        return g;
    };
    auto hess_sum = [&](const Vec<double>& u) {
        Mat<double> H(n, Vec<double>(n, 0.0));
        for (size_t i = 0; i < fns.size(); ++i) {
            if (lam[i] == 0) continue;
            auto Hi = fns[i]->hess(u);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) H[r][c] += lam[i] * Hi[r][c];
        }
        return H;
    };
    double total = 0;
    for (const auto& s : N.strata) {
        int sign = ncdet::stratum_sign(s, n) * s.coeff;
        auto fnodes = ncdet::face_nodes(s.face, order);
        auto pnodes = ncdet::patch_nodes(s.patch, order);
        double acc = 0;
        int first_det_sign = 0;
        for (const auto& fn : fnodes)
            for (const auto& pn : pnodes) {
                auto G = grad_sum(pn.u);
                auto H = hess_sum(pn.u);
                for (auto [t, wt] : ncdet::gl_rule(order)) {
                    // Rows ordered to match the stratum orientation convention
                    // det[u | face tangents | patch tangents]: the gradient
                    // replaces the normal direction.
                    Mat<double> M;
                    M.push_back(G);
                    for (const auto& tv : fn.tangents) M.push_back(tv);
                    for (const auto& du : pn.tangents) M.push_back(scale(mat_apply(H, du), t));
                    double dt = det(M);
                    if (dt != 0) {
                        int ds = dt > 0 ? 1 : -1;
                        if (first_det_sign == 0) first_det_sign = ds;
                        else if (ds != first_det_sign) throw TubeJacobianFlip();
                    }
                    Vec<double> z = fn.x;
                    z = add(z, scale(G, t));
                    acc += fn.weight * pn.weight * wt * mu(z) * dt;
                }
            }
        total += sign * acc;
    }
    return total;
}

}  // namespace tubedet

/// Evaluates psi(K) through the tube route: per term,
///   mu(K) + d^k/dlam|_0 of  integral over N(K) x (0,1] of (xi_lam)^* mu,
/// by forward finite differences. Cross-checks eval_valuation.
inline EvalResult tube_pullback_eval(const GeneratorValuation& psi, const Polytope& K,
                                     int order = 12, double h0 = 1e-2) {
    EvalResult res;
    res.method = "numeric";
    auto N = normal_cycle(K);
    double base_mass = 0;
    for (const auto& t : psi.terms()) {
        int k = (int)t.bodies.size();
        std::vector<const HomogeneousFn*> fns;
        for (const auto& tb : t.bodies) {
            if (!tb.is_smooth())
                throw GeometryError("tube_pullback_eval needs smooth (support-body) term bodies");
            fns.push_back(&tb.smooth->fn());
        }
        double muK = K.mode() == Mode::Rational ? integrate_density_t(K.rat(), t.density).value
                                                : integrate_density_t(K.flt(), t.density).value;
        auto F = [&](const std::vector<double>& lam) {
            bool all_zero = true;
            for (double l : lam) all_zero &= (l == 0);
            if (all_zero) return muK;
            return muK + tubedet::tube_integral(N, t.density, fns, lam, order);
        };
        auto fd = forward_mixed_fd(F, k, h0);
        res.value += to_double(t.weight) * fd.value;
        res.error_estimate += std::abs(to_double(t.weight)) * fd.error_estimate;
        base_mass += std::abs(muK);
    }
    (void)base_mass;
    return res;
}

// ---------------------------------------------------------------------------
// Tube injectivity sampling

struct TubeInjectivityReport {
    int samples = 0;
    int collisions = 0;
    bool certified = false;
    double eps = 0;
};

struct TubeSample {
    Vec<double> p, u;
    double t;
    Vec<double> y;  // image
};

namespace tubedet {

inline Vec<double> random_unit(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> N01(0, 1);
    Vec<double> u(n);
    for (;;) {
        for (auto& x : u) x = N01(rng);
        double nn = norm(u);
        if (nn > 1e-6) return scale(u, 1 / nn);
    }
}

}  // namespace tubedet

/// Samples (p,u,t) on N(X) x (0,1] and scans for parameter-distant pairs with
/// nearly equal images; X given as a normal cycle (polytope) or a point set.
inline TubeInjectivityReport tube_injectivity_check(const NormalCycle& NX, const SupportBody& A,
                                                    double eps, int samples, uint64_t seed,
                                                    double eta = 1e-2, double eta_prime = 1e-3) {
    std::mt19937_64 rng(seed);
    int n = NX.n;
    std::vector<TubeSample> S;
    S.reserve(samples);
    std::uniform_real_distribution<double> U(0, 1);
    if (NX.strata.empty()) throw GeometryError("empty cycle");
    for (int i = 0; i < samples; ++i) {
        const auto& st = NX.strata[rng() % NX.strata.size()];
        // Random point in the face simplex.
        Vec<double> p = st.face[0];
        if (st.face.size() > 1) {
            std::vector<double> w(st.face.size());
            double sw = 0;
            for (auto& x : w) { x = -std::log(std::max(1e-12, U(rng))); sw += x; }
            p = vec_zero<double>(n);
            for (size_t j = 0; j < st.face.size(); ++j) p = add(p, scale(st.face[j], w[j] / sw));
        }
        // Random direction in the patch.
        Vec<double> u = st.patch[0];
        if (st.patch.size() == 2) u = ncdet::slerp(st.patch[0], st.patch[1], U(rng));
        else if (st.patch.size() == 3) {
            double a = U(rng), b = U(rng);
            if (a + b > 1) { a = 1 - a; b = 1 - b; }
            Vec<double> q = add(add(scale(st.patch[0], 1 - a - b), scale(st.patch[1], a)),
                                scale(st.patch[2], b));
            u = normalized(q);
        }
        double t = std::max(1e-6, U(rng));
        TubeSample s{p, u, t, {}};
        s.y = add(p, scale(A.grad(u), eps * t));
        S.push_back(std::move(s));
    }
    // Spatial hash on images.
    double cell = std::max(1e-12, eps * eta_prime * 4);
    std::map<std::vector<long>, std::vector<int>> grid;
    auto key_of = [&](const Vec<double>& y) {
        std::vector<long> k(n);
        for (int i = 0; i < n; ++i) k[i] = (long)std::floor(y[i] / cell);
        return k;
    };
    for (int i = 0; i < (int)S.size(); ++i) grid[key_of(S[i].y)].push_back(i);
    TubeInjectivityReport rep;
    rep.samples = samples;
    rep.eps = eps;
    std::vector<long> off(n, 0);
    for (int i = 0; i < (int)S.size(); ++i) {
        auto base = key_of(S[i].y);
        // neighbor cells
        std::vector<long> k(n);
        std::function<void(int)> visit = [&](int dimi) {
            if (dimi == n) {
                auto it = grid.find(k);
                if (it == grid.end()) return;
                for (int j : it->second) {
                    if (j <= i) continue;
                    const auto& a = S[i];
                    const auto& b = S[j];
                    if (norm(sub(a.y, b.y)) > eps * eta_prime) continue;
                    // Image-adapted parameter metric: direction differences
                    // only matter at the scale eps*t they act at.
                    double tbar = 0.5 * (a.t + b.t);
                    double param_dist = norm(sub(a.p, b.p)) +
                                        eps * tbar * std::acos(std::clamp(dot(a.u, b.u), -1.0, 1.0)) +
                                        eps * std::abs(a.t - b.t);
                    if (param_dist > eta) rep.collisions++;
                }
                return;
            }
            for (long dd = -1; dd <= 1; ++dd) {
                k[dimi] = base[dimi] + dd;
                visit(dimi + 1);
            }
        };
        visit(0);
    }
    rep.certified = rep.collisions == 0;
    return rep;
}

/// Normal cycle of a finite point set (isolated points: full spheres).
inline NormalCycle point_set_cycle(const std::vector<Vec<double>>& pts) {
    if (pts.empty()) throw GeometryError("empty point set");
    int n = (int)pts[0].size();
    NormalCycle N;
    N.n = n;
    for (const auto& p : pts) {
        PolytopeT<double> P = convex_hull_t<double>({p});
        auto Np = normal_cycle_t(P);
        for (auto& s : Np.strata) N.strata.push_back(std::move(s));
    }
    return N;
}

// ---------------------------------------------------------------------------
// Reach

/// Point-pair reach estimator over boundary samples with normals:
/// inf over pairs of |x1-x0|^2 / (2 dist(x1, Tan(x0))). For region samples
/// (one_sided, outward normals) only exterior-side deviations count; for
/// curve/point-cloud samples the distance to the tangent line is two-sided.
inline double reach_estimate(const std::vector<Vec<double>>& points,
                             const std::vector<Vec<double>>& normals, double cap,
                             bool one_sided = true) {
    double best = cap;
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            Vec<double> d = sub(points[j], points[i]);
            double h = dot(d, normals[i]);
            if (!one_sided) h = std::abs(h);
            if (h <= 1e-14) continue;
            best = std::min(best, norm2(d) / (2 * h));
        }
    return best;
}

/// reach g(K) >= min{ delta/2 ||Dg^-1||^-1,  ||Dg^-1||^-2 ||D^2 g||^-1 }.
inline double reach_bound(double jac_inv_norm, double hess_norm, double delta) {
    if (jac_inv_norm <= 0) throw GeometryError("reach_bound: invalid jacobian norm");
    double first = delta / 2 / jac_inv_norm;
    if (hess_norm <= 0) return first;
    double second = 1.0 / (jac_inv_norm * jac_inv_norm * hess_norm);
    return std::min(first, second);
}

// ---------------------------------------------------------------------------
// Federer and strict-convexity inequality probes

/// For samples (x_i, n_i) on Nor(X) with reach > delta0:
/// <x1-x0, n1-n0> >= -|x1-x0|^2 / delta0. Returns the worst margin.
inline double federer_monotonicity_margin(const std::vector<Vec<double>>& pts,
                                          const std::vector<Vec<double>>& nrm, double delta0) {
    double worst = 1e300;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            Vec<double> dx = sub(pts[j], pts[i]), dn = sub(nrm[j], nrm[i]);
            worst = std::min(worst, dot(dx, dn) + norm2(dx) / delta0);
        }
    return worst;
}

/// Boundary pairs of a strictly convex body with curvature >= delta1:
/// <x1-x0, n1-n0> >= delta1 |x1-x0|^2. Returns the worst margin.
inline double strict_convexity_margin(const SupportBody& A, double delta1, int grid_m = 256) {
    auto dirs = A.dim() == 2 ? direction_grid_2d(grid_m) : direction_grid_3d(2);
    double worst = 1e300;
    std::vector<Vec<double>> xs;
    for (const auto& u : dirs) xs.push_back(A.grad(u));
    for (size_t i = 0; i < dirs.size(); ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j) {
            Vec<double> dx = sub(xs[j], xs[i]), dn = sub(dirs[j], dirs[i]);
            worst = std::min(worst, dot(dx, dn) - delta1 * norm2(dx));
        }
    return worst;
}

}  // namespace minkval
