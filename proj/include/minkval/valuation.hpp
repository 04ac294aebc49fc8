#pragma once

#include <random>

#include "minkval/bodies.hpp"
#include "minkval/density.hpp"
#include "minkval/support_body.hpp"

namespace minkval {

// ---------------------------------------------------------------------------
// Minkowski-volume polynomials and mixed derivatives at zero

/// Exact multivariate polynomial lambda -> mu(K + sum lambda_i K_i).
struct MinkowskiPolynomial {
    int s = 0;
    std::map<std::vector<int>, Rat> coeffs;

    Rat eval(const Vec<Rat>& lam) const {
        Rat r(0);
        for (const auto& [e, c] : coeffs) {
            Rat m = c;
            for (int i = 0; i < s; ++i)
                for (int k = 0; k < e[i]; ++k) m *= lam[i];
            r += m;
        }
        return r;
    }

    /// Coefficient of lambda_1 ... lambda_s (the multilinear monomial).
    Rat multilinear_coefficient() const {
        auto it = coeffs.find(std::vector<int>(s, 1));
        return it == coeffs.end() ? Rat(0) : it->second;
    }
};

namespace calcdet {

/// Weights w with sum_j w_j p(j) = p'(0) exact for polynomials of degree <= D
/// over nodes 0..D.
template <class T>
Vec<T> derivative_stencil(int D) {
    // Solve V^T w = e_1 with V[i][j] = j^i (i-th power at node j).
    Mat<T> Vt(D + 1, Vec<T>(D + 1));
    for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D; ++j) {
            T p(1);
            for (int k = 0; k < i; ++k) p *= T((long)j);
            Vt[i][j] = p;
        }
    Vec<T> e(D + 1, T(0));
    e[1] = T(1);
    Vec<T> w;
    if (!solve(Vt, e, w)) throw GeometryError("derivative stencil solve failed");
    return w;
}

/// Inverse Vandermonde on nodes 0..D (column-major application).
template <class T>
Mat<T> inverse_vandermonde(int D) {
    Mat<T> V(D + 1, Vec<T>(D + 1));
    for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D; ++j) {
            T p(1);
            for (int k = 0; k < j; ++k) p *= T((long)i);
            V[i][j] = p;
        }
    Mat<T> inv(D + 1, Vec<T>(D + 1));
    for (int c = 0; c <= D; ++c) {
        Vec<T> e(D + 1, T(0));
        e[c] = T(1);
        Vec<T> x;
        if (!solve(V, e, x)) throw GeometryError("vandermonde inverse failed");
        for (int r = 0; r <= D; ++r) inv[r][c] = x[r];
    }
    return inv;
}

}  // namespace calcdet

/// Groups repeated bodies so that lam_1 A + lam_2 A folds to (lam_1+lam_2) A.
template <class T>
struct BodyGroups {
    std::vector<const PolytopeT<T>*> reps;  // distinct bodies
    std::vector<int> group_of;              // slot -> group index

    explicit BodyGroups(const std::vector<const PolytopeT<T>*>& bodies) {
        for (auto* b : bodies) {
            int gi = -1;
            for (int g = 0; g < (int)reps.size(); ++g)
                if (reps[g] == b || same_vertex_set(*reps[g], *b)) { gi = g; break; }
            if (gi < 0) { gi = (int)reps.size(); reps.push_back(b); }
            group_of.push_back(gi);
        }
    }
    std::vector<int> merged(const std::vector<int>& lam) const {
        std::vector<int> s(reps.size(), 0);
        for (size_t i = 0; i < lam.size(); ++i) s[group_of[i]] += lam[i];
        return s;
    }
};

/// mu-mass of K + sum_i lam_i A_i, where lam_i are nonnegative integers (grid
/// nodes). Exact in rational mode for polynomial mu.
template <class T>
T minkowski_grid_value(const Density& mu, const PolytopeT<T>& K,
                       const std::vector<const PolytopeT<T>*>& bodies,
                       const std::vector<int>& lam, int order = 6) {
    PolytopeT<T> S = K;
    for (size_t i = 0; i < bodies.size(); ++i) {
        if (lam[i] == 0) continue;
        S = minkowski_sum_t(S, scale_t(*bodies[i], T((long)lam[i])));
    }
    auto res = integrate_density_t(S, mu, std::max(order, std::max(0, mu.degree())));
    if constexpr (ScalarTraits<T>::exact) {
        if (res.exact) return res.exact_value;
        return rat_of_double(res.value);
    } else {
        return res.value;
    }
}

/// The exact polynomial lambda -> mu(K + sum lambda_i K_i) via tensor-grid
/// evaluation on {0..D}^s and an inverse-Vandermonde transform per axis.
inline MinkowskiPolynomial minkowski_polynomial(const Density& mu, const PolytopeT<Rat>& K,
                                                const std::vector<const PolytopeT<Rat>*>& bodies,
                                                int degree_bound = -1) {
    if (!mu.is_polynomial())
        throw GeometryError("minkowski_polynomial needs a polynomial density (use the numeric derivative path)");
    int s = (int)bodies.size();
    int D = degree_bound >= 0 ? degree_bound : K.n + mu.degree();
    MinkowskiPolynomial P;
    P.s = s;
    if (s == 0) {
        P.coeffs[{}] = minkowski_grid_value(mu, K, bodies, {});
        return P;
    }
    // Value tensor (cached on merged per-group scales: repeated bodies fold).
    BodyGroups<Rat> groups(bodies);
    std::map<std::vector<int>, Rat> cache;
    std::vector<int> lam(s, 0);
    std::map<std::vector<int>, Rat> F;
    for (;;) {
        auto key = groups.merged(lam);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, minkowski_grid_value(mu, K, groups.reps, key)).first;
        F[lam] = it->second;
        int i = 0;
        while (i < s && ++lam[i] > D) lam[i++] = 0;
        if (i == s) break;
    }
    // Apply inverse Vandermonde along each axis.
    auto inv = calcdet::inverse_vandermonde<Rat>(D);
    for (int axis = 0; axis < s; ++axis) {
        std::map<std::vector<int>, Rat> G;
        for (auto& [idx, val] : F) {
            (void)val;
            if (idx[axis] != 0) continue;
            for (int r = 0; r <= D; ++r) {
                Rat acc(0);
                std::vector<int> q = idx;
                for (int j = 0; j <= D; ++j) {
                    q[axis] = j;
                    acc += inv[r][j] * F[q];
                }
                q[axis] = r;
                G[q] = acc;
            }
        }
        F = std::move(G);
    }
    for (auto& [idx, val] : F)
        if (sgn(val) != 0) P.coeffs[idx] = val;
    return P;
}

struct DerivResult {
    double value = 0;
    Rat exact_value;
    bool exact = false;
    double error_estimate = 0;
};

/// d^k/(dlam_1..dlam_k)|_0 of mu(K + sum lam_i A_i) for polynomial mu:
/// tensor derivative stencil over integer nodes; exact in rational mode.
template <class T>
DerivResult mixed_derivative_poly(const Density& mu, const PolytopeT<T>& K,
                                  const std::vector<const PolytopeT<T>*>& bodies,
                                  int degree_bound = -1) {
    int k = (int)bodies.size();
    int D = degree_bound >= 0 ? degree_bound : K.n + std::max(0, mu.degree());
    DerivResult r;
    if (k == 0) {
        auto res = integrate_density_t(K, mu);
        r.exact = res.exact;
        r.exact_value = res.exact_value;
        r.value = res.exact ? to_double(res.exact_value) : res.value;
        return r;
    }
    auto w = calcdet::derivative_stencil<T>(D);
    BodyGroups<T> groups(bodies);
    std::map<std::vector<int>, T> cache;  // keyed by merged per-group scales
    std::vector<int> lam(k, 0);
    T acc(0);
    for (;;) {
        T wt(1);
        for (int i = 0; i < k; ++i) wt *= w[lam[i]];
        if (ScalarTraits<T>::sign(wt) != 0) {
            auto key = groups.merged(lam);
            auto it = cache.find(key);
            if (it == cache.end())
                it = cache.emplace(key, minkowski_grid_value(mu, K, groups.reps, key)).first;
            acc += wt * it->second;
        }
        int i = 0;
        while (i < k && ++lam[i] > D) lam[i++] = 0;
        if (i == k) break;
    }
    if constexpr (ScalarTraits<T>::exact) {
        r.exact = true;
        r.exact_value = acc;
        r.value = to_double(acc);
    } else {
        r.value = acc;
        r.error_estimate = 1e-12 * std::abs(acc);
    }
    return r;
}

struct FdResult {
    double value = 0;
    double error_estimate = 0;
};

/// Mixed first derivative at 0 over [0,infty)^k by 3-point forward stencils
/// per variable (O(h^2)) with 3-level Richardson extrapolation.
inline FdResult forward_mixed_fd(const std::function<double(const std::vector<double>&)>& F, int k,
                                 double h0 = 1e-2) {
    std::map<std::vector<double>, double> cache;
    auto value_at = [&](const std::vector<double>& lam) {
        auto it = cache.find(lam);
        if (it == cache.end()) it = cache.emplace(lam, F(lam)).first;
        return it->second;
    };
    auto estimate = [&](double h) {
        double acc = 0;
        std::vector<int> digit(k, 0);
        const double wgt[3] = {-3, 4, -1};
        for (;;) {
            double w = 1;
            std::vector<double> lam(k);
            for (int i = 0; i < k; ++i) {
                w *= wgt[digit[i]];
                lam[i] = h * digit[i];
            }
            acc += w * value_at(lam);
            int i = 0;
            while (i < k && ++digit[i] > 2) digit[i++] = 0;
            if (i == k) break;
        }
        return acc / std::pow(2 * h, k);
    };
    if (k == 0) return {value_at({}), 0.0};
    double d0 = estimate(h0), d1 = estimate(h0 / 2), d2 = estimate(h0 / 4);
    double r1 = (4 * d1 - d0) / 3, r2 = (4 * d2 - d1) / 3;
    double rr = (16 * r2 - r1) / 15;
    return {rr, std::abs(rr - r2) + 1e-14 * std::abs(rr)};
}

/// Numeric route for smooth densities: forward differences on [0,h0]^k with
/// Richardson extrapolation (3 levels), order reported via error estimate.
template <class T>
DerivResult mixed_derivative_numeric(const Density& mu, const PolytopeT<T>& K,
                                     const std::vector<const PolytopeT<T>*>& bodies,
                                     double h0 = 1e-2, int order = 6) {
    int k = (int)bodies.size();
    auto F = [&](const std::vector<double>& lam) {
        PolytopeT<T> S = K;
        for (int i = 0; i < k; ++i) {
            if (lam[i] == 0) continue;
            S = minkowski_sum_t(S, scale_t(*bodies[i], ScalarTraits<T>::from_double(lam[i])));
        }
        return integrate_density_t(S, mu, order).value;
    };
    auto fd = forward_mixed_fd(F, k, h0);
    DerivResult r;
    r.value = fd.value;
    r.error_estimate = fd.error_estimate;
    return r;
}

// ---------------------------------------------------------------------------
// Generator-form valuations

struct TermBody {
    std::shared_ptr<const SupportBody> smooth;  // null for polytope bodies
    Polytope poly;                              // exact polytope or surrogate
    Polytope poly_coarse;                       // half-resolution surrogate (error probe)
    bool is_smooth() const { return smooth != nullptr; }
};

struct GenTerm {
    Rat weight;
    Density density;
    std::vector<TermBody> bodies;
};

struct EvalResult {
    double value = 0;
    Rat exact_value;
    bool exact = false;
    double error_estimate = 0;
    std::string method;
};

/// Finite-term generator representation of a smooth valuation:
/// psi(K) = sum_t w_t d^k/dlam|_0 mu_t(K + sum_i lam_i A_ti).
class GeneratorValuation {
  public:
    GeneratorValuation(int n, Mode mode = Mode::Rational) : n_(n), mode_(mode) {}

    int dim() const { return n_; }
    Mode mode() const { return mode_; }
    const std::vector<GenTerm>& terms() const { return terms_; }

    static int default_surrogate_count(int n) { return n <= 2 ? 256 : 2562; }

    /// Adds a term with polytope bodies (translate-normalized to contain the
    /// origin in the interior).
    GeneratorValuation& add_term(Rat weight, Density density, std::vector<Polytope> bodies) {
        GenTerm t;
        t.weight = std::move(weight);
        t.density = std::move(density);
        for (auto& B : bodies) {
            if (B.ambient_dim() != n_) throw GeometryError("term body dimension mismatch");
            if (B.intrinsic_dim() != n_) throw GeometryError("term bodies must be full-dimensional");
            if ((int)t.bodies.size() >= n_) throw GeometryError("at most n bodies per term");
            TermBody tb;
            tb.poly = normalize_body(B);
            t.bodies.push_back(std::move(tb));
        }
        terms_.push_back(std::move(t));
        return *this;
    }

    /// Adds a term whose bodies are smooth support bodies, realized as dense
    /// inscribed polytopes (kept rational-exact via dyadic coordinates).
    GeneratorValuation& add_smooth_term(Rat weight, Density density,
                                        std::vector<std::shared_ptr<const SupportBody>> bodies,
                                        int surrogate_m = -1) {
        GenTerm t;
        t.weight = std::move(weight);
        t.density = std::move(density);
        int m = surrogate_m > 0 ? surrogate_m : default_surrogate_count(n_);
        for (auto& sb : bodies) {
            if (sb->dim() != n_) throw GeometryError("term body dimension mismatch");
            if ((int)t.bodies.size() >= n_) throw GeometryError("at most n bodies per term");
            TermBody tb;
            tb.smooth = sb;
            tb.poly = surrogate(*sb, m);
            tb.poly_coarse = surrogate(*sb, std::max(n_ + 2, m / 2));
            t.bodies.push_back(std::move(tb));
        }
        terms_.push_back(std::move(t));
        return *this;
    }

    GeneratorValuation scaled(const Rat& c) const {
        GeneratorValuation r = *this;
        for (auto& t : r.terms_) t.weight *= c;
        return r;
    }

    GeneratorValuation operator+(const GeneratorValuation& o) const {
        if (o.n_ != n_) throw GeometryError("valuation dimension mismatch");
        GeneratorValuation r = *this;
        for (const auto& t : o.terms_) r.terms_.push_back(t);
        return r;
    }

    /// Largest Lebesgue-term homogeneity degree: n - k over Lebesgue terms,
    /// plus density degrees for weighted terms.
    int degree_bookkeeping() const {
        int deg = 0;
        for (const auto& t : terms_)
            deg = std::max(deg, n_ - (int)t.bodies.size() + std::max(0, t.density.degree()));
        return deg;
    }

  private:
    Polytope surrogate(const SupportBody& sb, int m) const {
        auto dirs = n_ == 2 ? direction_grid_2d(m) : direction_grid_3d(icosphere_level(m));
        if (mode_ == Mode::Rational) return Polytope(inscribed_polytope_rational(sb, dirs));
        return Polytope(inscribed_polytope(sb, dirs));
    }
    static int icosphere_level(int m) {
        int lvl = 0, cnt = 12;
        while (cnt < m && lvl < 4) { cnt = 10 * (1 << (2 * (lvl + 1))) + 2; ++lvl; }
        return lvl;
    }
    Polytope normalize_body(const Polytope& B) const {
        // Translate so that the stored interior point moves to the origin.
        if (B.mode() == Mode::Rational) {
            const auto& P = B.rat();
            bool inside = contains_strictly(P, vec_zero<Rat>(n_));
            if (inside) return B;
            return Polytope(translate_t(P, neg(P.ipoint)));
        }
        const auto& P = B.flt();
        if (contains_strictly(P, vec_zero<double>(n_))) return B;
        return Polytope(translate_t(P, neg(P.ipoint)));
    }
    template <class T>
    static bool contains_strictly(const PolytopeT<T>& P, const Vec<T>& x) {
        for (const auto& f : P.ifacets)
            if (ScalarTraits<T>::sign(dot(f.a, x) - f.b) >= 0) return false;
        return true;
    }

    int n_ = 2;
    Mode mode_ = Mode::Rational;
    std::vector<GenTerm> terms_;
};

namespace valdet {

template <class T>
PolytopeT<T> get_poly(const Polytope& B);

template <>
inline PolytopeT<Rat> get_poly<Rat>(const Polytope& B) {
    return B.mode() == Mode::Rational ? B.rat() : rationalize(B.flt());
}
template <>
inline PolytopeT<double> get_poly<double>(const Polytope& B) {
    return B.mode() == Mode::Float ? B.flt() : to_float(B.rat());
}

template <class T>
DerivResult eval_term_t(const GenTerm& t, const PolytopeT<T>& K, bool coarse) {
    std::vector<PolytopeT<T>> owned;
    owned.reserve(t.bodies.size());
    for (const auto& tb : t.bodies)
        owned.push_back(get_poly<T>(coarse && tb.is_smooth() ? tb.poly_coarse : tb.poly));
    std::vector<const PolytopeT<T>*> ptrs;
    for (auto& p : owned) ptrs.push_back(&p);
    if (t.density.is_polynomial()) return mixed_derivative_poly(t.density, K, ptrs);
    return mixed_derivative_numeric(t.density, K, ptrs);
}

}  // namespace valdet

/// psi(K) = sum over terms. Exact when every body is an exact polytope and
/// the density is polynomial in rational mode; smooth-body surrogate error is
/// probed with half-resolution surrogates.
inline EvalResult eval_valuation(const GeneratorValuation& psi, const Polytope& K) {
    if (K.ambient_dim() != psi.dim()) throw GeometryError("eval_valuation dimension mismatch");
    EvalResult res;
    bool all_exact = true;
    bool any_smooth = false;
    Rat acc(0);
    double accd = 0, err = 0;
    for (const auto& t : psi.terms()) {
        DerivResult d;
        if (psi.mode() == Mode::Rational) {
            auto Kq = valdet::get_poly<Rat>(K);
            d = valdet::eval_term_t<Rat>(t, Kq, false);
        } else {
            auto Kf = valdet::get_poly<double>(K);
            d = valdet::eval_term_t<double>(t, Kf, false);
        }
        bool smooth = false;
        for (const auto& tb : t.bodies) smooth |= tb.is_smooth();
        if (smooth) {
            any_smooth = true;
            DerivResult dc;
            if (psi.mode() == Mode::Rational) {
                auto Kq = valdet::get_poly<Rat>(K);
                dc = valdet::eval_term_t<Rat>(t, Kq, true);
            } else {
                auto Kf = valdet::get_poly<double>(K);
                dc = valdet::eval_term_t<double>(t, Kf, true);
            }
            err += to_double(t.weight) == 0 ? 0 : std::abs(to_double(t.weight)) * std::abs(d.value - dc.value);
        }
        err += std::abs(to_double(t.weight)) * d.error_estimate;
        if (d.exact) acc += t.weight * d.exact_value;
        else all_exact = false;
        accd += to_double(t.weight) * d.value;
    }
    res.exact = all_exact && !any_smooth;
    res.exact_value = acc;
    res.value = all_exact ? to_double(acc) : accd;
    res.error_estimate = err;
    res.method = res.exact ? "exact" : "numeric";
    return res;
}

/// Inclusion-exclusion over a finite union of convex polytopes.
inline EvalResult eval_on_union(const GeneratorValuation& psi, const std::vector<Polytope>& pieces) {
    if (pieces.size() > 6) throw GeometryError("eval_on_union supports at most 6 pieces (2^N subsets)");
    if (pieces.empty()) return {};
    EvalResult total;
    total.exact = true;
    Rat acc(0);
    double accd = 0, err = 0;
    int N = (int)pieces.size();
    for (int mask = 1; mask < (1 << N); ++mask) {
        // Intersection over the subset; rational mode throughout.
        std::optional<PolytopeT<Rat>> I;
        bool empty = false;
        for (int i = 0; i < N && !empty; ++i) {
            if (!(mask >> i & 1)) continue;
            auto Pi = valdet::get_poly<Rat>(pieces[i]);
            if (!I) { I = Pi; continue; }
            auto J = intersect_t(*I, Pi);
            if (!J) empty = true;
            else I = std::move(*J);
        }
        if (empty) continue;
        EvalResult e = eval_valuation(psi, Polytope(*I));
        int sign = __builtin_popcount((unsigned)mask) % 2 == 1 ? 1 : -1;
        if (e.exact) acc += Rat(sign) * e.exact_value;
        else total.exact = false;
        accd += sign * e.value;
        err += e.error_estimate;
    }
    total.exact_value = acc;
    total.value = total.exact ? to_double(acc) : accd;
    total.error_estimate = err;
    total.method = total.exact ? "exact" : "numeric";
    return total;
}

// ---------------------------------------------------------------------------
// Intrinsic volumes (classical face/external-angle formula, n <= 3)

/// Unit-ball volumes kappa_j as (rational coefficient, power of pi).
inline std::pair<Rat, int> kappa_exact(int j) {
    switch (j) {
        case 0: return {Rat(1), 0};
        case 1: return {Rat(2), 0};
        case 2: return {Rat(1), 1};
        case 3: return {Rat(4, 3), 1};
        default: throw GeometryError("kappa table covers j <= 3");
    }
}
inline double kappa_value(int j) {
    auto [c, p] = kappa_exact(j);
    return to_double(c) * std::pow(M_PI, p);
}

namespace valdet {

inline double angle_between(const Vec<double>& a, const Vec<double>& b) {
    double c = dot(a, b) / (norm(a) * norm(b));
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

/// Solid angle of the spherical polygon with ordered unit corners.
inline double spherical_polygon_area(std::vector<Vec<double>> u) {
    int k = (int)u.size();
    if (k < 3) return 0;
    double area = 0;
    for (int i = 1; i + 1 < k; ++i) {
        const auto &a = u[0], &b = u[i], &c = u[i + 1];
        double triple = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                        a[2] * (b[0] * c[1] - b[1] * c[0]);
        double denom = 1 + dot(a, b) + dot(b, c) + dot(c, a);
        double omega = 2 * std::atan2(std::abs(triple), denom);
        area += omega;
    }
    return area;
}

template <class T>
double intrinsic_volume_t(const PolytopeT<T>& P, int j) {
    int d = P.d;
    if (j < 0 || j > P.n) throw GeometryError("intrinsic volume index out of range");
    if (j > d) return 0;
    if (j == d) return measure_jd(P);
    if (!P.lattice_built) throw GeometryError("intrinsic volumes need the face lattice (d <= 3)");
    if (j == 0) {
        return 1.0;  // Gram relation; asserted against angle sums in tests
    }
    double acc = 0;
    if (d == 2 && j == 1) {
        // Edge external angle is 1/2 in any ambient dimension.
        for (const auto& f : P.faces[1]) {
            Vec<double> a = vec_to_double_any(P.verts[f.verts[0]]);
            Vec<double> b = vec_to_double_any(P.verts[f.verts[1]]);
            acc += norm(sub(a, b)) * 0.5;
        }
        return acc;
    }
    if (d == 3 && j == 2) {
        for (int fi = 0; fi < (int)P.ifacets.size(); ++fi) {
            std::vector<Vec<T>> pts;
            for (int v : P.facet_verts[fi]) pts.push_back(P.iverts[v]);
            auto F = convex_hull_t(pts);
            acc += measure_jd(F) * 0.5;
        }
        return acc;
    }
    if (d == 3 && j == 1) {
        for (const auto& e : P.faces[1]) {
            if (e.facets.size() != 2) continue;
            Vec<double> n1 = vec_to_double_any(P.ifacets[e.facets[0]].a);
            Vec<double> n2 = vec_to_double_any(P.ifacets[e.facets[1]].a);
            double ext = angle_between(n1, n2) / (2 * M_PI);
            Vec<double> a = vec_to_double_any(P.iverts[e.verts[0]]);
            Vec<double> b = vec_to_double_any(P.iverts[e.verts[1]]);
            acc += norm(sub(a, b)) * ext;
        }
        return acc;
    }
    throw GeometryError("unsupported intrinsic volume case");
}

/// Sum of vertex external angles of a polygon (should be 1).
template <class T>
double polygon_external_angle_sum(const PolytopeT<T>& P) {
    double acc = 0;
    for (const auto& v : P.faces[0]) {
        if (v.facets.size() != 2) continue;
        Vec<double> n1 = vec_to_double_any(P.ifacets[v.facets[0]].a);
        Vec<double> n2 = vec_to_double_any(P.ifacets[v.facets[1]].a);
        acc += angle_between(n1, n2) / (2 * M_PI);
    }
    return acc;
}

/// Sum of vertex normal-cone solid angles of a 3-polytope (should be 1).
template <class T>
double vertex_solid_angle_sum(const PolytopeT<T>& P) {
    double acc = 0;
    for (const auto& v : P.faces[0]) {
        // Order the facet normals around the vertex by walking edges.
        std::vector<int> fs = v.facets;
        if (fs.size() < 3) continue;
        std::vector<Vec<double>> corners;
        // Walk: start at fs[0]; repeatedly pick a facet sharing an edge
        // through this vertex with the current one.
        std::vector<int> order = {fs[0]};
        std::set<int> used = {fs[0]};
        while ((int)order.size() < (int)fs.size()) {
            int cur = order.back();
            bool advanced = false;
            for (int cand : fs) {
                if (used.count(cand)) continue;
                // Share an edge through v?
                for (const auto& e : P.faces[1]) {
                    if (std::find(e.verts.begin(), e.verts.end(), v.verts[0]) == e.verts.end()) continue;
                    if (e.facets.size() == 2 &&
                        ((e.facets[0] == cur && e.facets[1] == cand) ||
                         (e.facets[1] == cur && e.facets[0] == cand))) {
                        order.push_back(cand);
                        used.insert(cand);
                        advanced = true;
                        break;
                    }
                }
                if (advanced) break;
            }
            if (!advanced) break;
        }
        for (int fi : order) corners.push_back(normalized(vec_to_double_any(P.ifacets[fi].a)));
        acc += spherical_polygon_area(corners) / (4 * M_PI);
    }
    return acc;
}

}  // namespace valdet

inline double intrinsic_volume(const Polytope& P, int j) {
    return P.visit([&](const auto& p) { return valdet::intrinsic_volume_t(p, j); });
}

// ---------------------------------------------------------------------------
// Euler characteristic generator

/// chi(K) = 1/(n! vol(D)) d^n/dlam_1..dlam_n|_0 vol(K + (sum lam_i) D) with D
/// an inscribed ball surrogate with rational on-sphere vertices; the
/// volume normalization makes the unit law exact at any resolution.
inline GeneratorValuation euler_generator(int n, int m = 0) {
    if (n < 1 || n > 3) throw GeometryError("euler_generator supports n <= 3");
    if (m == 0) m = n == 1 ? 0 : (n == 2 ? 48 : 162);
    GeneratorValuation chi(n, Mode::Rational);
    PolytopeT<Rat> D = n == 1 ? make_segment<Rat>({Rat(-1)}, {Rat(1)}) : rational_ball_surrogate(n, m, Rat(1));
    Rat vol = volume_t(D);
    Rat fact(1);
    for (int i = 2; i <= n; ++i) fact *= Rat(i);
    std::vector<Polytope> bodies(n, Polytope(D));
    chi.add_term(Rat(1) / (fact * vol), Density::lebesgue(n), bodies);
    return chi;
}

// ---------------------------------------------------------------------------
// Corollary-style bound probe

struct BoundProbeReport {
    double max_ratio = 0;
    double fitted_constant = 0;
    std::vector<double> ratios;
};

/// Empirical |mixed derivative| / prod ||h_A||_C2 over random polytopes
/// inside B(0,R).
inline BoundProbeReport cormink_bound_probe(const Density& mu, double R,
                                            const std::vector<const SupportBody*>& bodies,
                                            int trials, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = bodies.empty() ? 2 : bodies[0]->dim();
    auto grid = default_direction_grid(n);
    double denom = 1;
    GeneratorValuation psi(n, Mode::Rational);
    std::vector<std::shared_ptr<const SupportBody>> sb;
    for (auto* b : bodies) {
        denom *= b->c2_norm_estimate(grid);
        sb.push_back(std::make_shared<SupportBody>(*b));
    }
    psi.add_smooth_term(Rat(1), mu, sb, n == 2 ? 128 : 162);
    BoundProbeReport rep;
    for (int t = 0; t < trials; ++t) {
        auto K0 = n == 2 ? random_lattice_polygon(rng, 8, 8) : random_lattice_polytope(rng, n, 10, 8);
        // Scale into B(0,R).
        double maxn = 0;
        for (const auto& v : K0.verts) maxn = std::max(maxn, norm(vec_to_double(v)));
        Rat c = rat_approx(R / maxn * 0.99, 1 << 20);
        auto K = scale_t(K0, c);
        auto e = eval_valuation(psi, Polytope(K));
        double ratio = std::abs(e.value) / denom;
        rep.ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    rep.fitted_constant = rep.max_ratio;
    return rep;
}

}  // namespace minkval
