#pragma once

#include <functional>
#include <map>

#include "minkval/ops.hpp"

namespace minkval {

/// Sparse multivariate polynomial.
template <class T>
struct Poly {
    int nvars = 0;
    std::map<std::vector<int>, T> terms;

    static Poly constant(int nvars, const T& c) {
        Poly p;
        p.nvars = nvars;
        if (ScalarTraits<T>::sign(c) != 0) p.terms[std::vector<int>(nvars, 0)] = c;
        return p;
    }
    static Poly variable(int nvars, int i) {
        Poly p;
        p.nvars = nvars;
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        p.terms[e] = T(1);
        return p;
    }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms) {
            int s = 0;
            for (int k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }

    T eval(const Vec<T>& x) const {
        T r(0);
        for (const auto& [e, c] : terms) {
            T m = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) m *= x[i];
            r += m;
        }
        return r;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms) {
            auto it = terms.find(e);
            if (it == terms.end()) terms[e] = c;
            else {
                it->second += c;
                if (ScalarTraits<T>::sign(it->second) == 0) terms.erase(it);
            }
        }
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }

    Poly operator*(const Poly& o) const {
        Poly r;
        r.nvars = nvars;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                std::vector<int> e(nvars);
                for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.terms[e] += c1 * c2;
            }
        for (auto it = r.terms.begin(); it != r.terms.end();)
            it = ScalarTraits<T>::sign(it->second) == 0 ? r.terms.erase(it) : std::next(it);
        return r;
    }

    Poly scaled(const T& c) const {
        Poly r(*this);
        for (auto& [e, v] : r.terms) v *= c;
        return r;
    }

    /// Substitute x_i = origin_i + sum_j M[i][j] t_j  (t has `tvars` variables).
    Poly subst_affine(const Vec<T>& origin, const Mat<T>& M, int tvars) const {
        std::vector<Poly> lin;
        for (int i = 0; i < nvars; ++i) {
            Poly li = Poly::constant(tvars, origin[i]);
            for (int j = 0; j < tvars; ++j) {
                if (ScalarTraits<T>::sign(M[i][j]) == 0) continue;
                li += Poly::variable(tvars, j).scaled(M[i][j]);
            }
            lin.push_back(std::move(li));
        }
        Poly r;
        r.nvars = tvars;
        for (const auto& [e, c] : terms) {
            Poly m = Poly::constant(tvars, c);
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) m = m * lin[i];
            r += m;
        }
        return r;
    }
};

inline Poly<double> poly_to_double(const Poly<Rat>& p) {
    Poly<double> r;
    r.nvars = p.nvars;
    for (const auto& [e, c] : p.terms) r.terms[e] = to_double(c);
    return r;
}

/// Integral of the monomial t^gamma over the standard simplex in R^d:
/// prod(gamma_i!) / (d + |gamma|)!.
template <class T>
T simplex_monomial_integral(int d, const std::vector<int>& gamma) {
    T num(1);
    long tot = 0;
    for (int g : gamma) {
        for (int k = 2; k <= g; ++k) num *= T(k);
        tot += g;
    }
    T den(1);
    for (long k = 2; k <= d + tot; ++k) den *= T(k);
    return num / den;
}

/// Exact integral of a polynomial over the simplex with vertices vs (d+1
/// points in R^d).
template <class T>
T integrate_poly_simplex(const Poly<T>& p, const std::vector<Vec<T>>& vs) {
    int d = (int)vs.size() - 1;
    Mat<T> M(p.nvars, Vec<T>(d));
    for (int i = 0; i < p.nvars; ++i)
        for (int j = 0; j < d; ++j) M[i][j] = vs[j + 1][i] - vs[0][i];
    T J = det(M);
    if (ScalarTraits<T>::sign(J) == 0) return T(0);
    if (ScalarTraits<T>::sign(J) < 0) J = -J;
    Poly<T> q = p.subst_affine(vs[0], M, d);
    T r(0);
    for (const auto& [e, c] : q.terms) r += c * simplex_monomial_integral<T>(d, e);
    return r * J;
}

// ---------------------------------------------------------------------------
// Grundmann-Moller simplex cubature (degree 2s+1), rational nodes/weights.

struct GMPoint {
    std::vector<Rat> bary;  // d+1 barycentric coordinates
    Rat weight;
};

/// Rule of exactness degree 2s+1 over a simplex normalized to volume 1/d!.
inline std::vector<GMPoint> gm_rule(int d, int s) {
    std::vector<GMPoint> rule;
    auto fact = [](long k) {
        Rat r(1);
        for (long i = 2; i <= k; ++i) r *= Rat(i);
        return r;
    };
    std::function<void(int, int, std::vector<int>&, const Rat&, long)> emit;
    for (int i = 0; i <= s; ++i) {
        long lam = d + 1 + 2 * (s - i);
        Rat w = fact(0);
        Rat lamp(1);
        for (int k = 0; k < 2 * s + 1; ++k) lamp *= Rat(lam);
        Rat denom = fact(i) * fact(d + 1 + 2 * s - i);
        for (int k = 0; k < 2 * s; ++k) denom *= Rat(2);
        w = lamp / denom;
        if (i % 2 == 1) w = -w;
        // beta in Z_{>=0}^{d+1}, |beta| = s - i
        std::vector<int> beta(d + 1, 0);
        std::function<void(int, int)> rec = [&](int pos, int rem) {
            if (pos == d) {
                beta[pos] = rem;
                GMPoint gp;
                gp.weight = w;
                for (int j = 0; j <= d; ++j) gp.bary.push_back(Rat(2 * beta[j] + 1, lam));
                rule.push_back(std::move(gp));
                return;
            }
            for (int v = 0; v <= rem; ++v) {
                beta[pos] = v;
                rec(pos + 1, rem - v);
            }
        };
        rec(0, s - i);
    }
    return rule;
}

/// Numeric integral of f over the simplex vs (d+1 points in R^m, m >= d is
/// allowed only when m == d; callers pass full-dimensional simplices).
inline double integrate_fn_simplex(const std::function<double(const Vec<double>&)>& f,
                                   const std::vector<Vec<double>>& vs, int s_index) {
    int d = (int)vs.size() - 1;
    Mat<double> M(d, Vec<double>(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) M[i][j] = vs[j + 1][i] - vs[0][i];
    double J = std::abs(det(M));
    if (J == 0) return 0;
    static std::map<std::pair<int, int>, std::vector<GMPoint>> cache;
    auto key = std::make_pair(d, s_index);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gm_rule(d, s_index)).first;
    double acc = 0;
    Vec<double> x(d);
    for (const auto& gp : it->second) {
        for (int i = 0; i < d; ++i) {
            double xi = 0;
            for (int j = 0; j <= d; ++j) xi += to_double(gp.bary[j]) * vs[j][i];
            x[i] = xi;
        }
        acc += to_double(gp.weight) * f(x);
    }
    // gm weights integrate over the standard simplex; the affine change of
    // variables contributes |det M| only.
    return acc * J;
}

// ---------------------------------------------------------------------------
// Density

/// Density against the Lebesgue background of the chart.
class Density {
  public:
    enum class Kind { Constant, Polynomial, Smooth };

    static Density lebesgue(int nvars) { return constant(nvars, Rat(1)); }
    static Density constant(int nvars, Rat c) {
        Density d;
        d.kind_ = Kind::Constant;
        d.poly_ = Poly<Rat>::constant(nvars, c);
        d.dpoly_ = poly_to_double(d.poly_);
        return d;
    }
    static Density polynomial(Poly<Rat> p) {
        Density d;
        d.kind_ = Kind::Polynomial;
        d.dpoly_ = poly_to_double(p);
        d.poly_ = std::move(p);
        return d;
    }
    static Density smooth(int nvars, std::function<double(const Vec<double>&)> f) {
        Density d;
        d.kind_ = Kind::Smooth;
        d.poly_.nvars = nvars;
        d.fn_ = std::move(f);
        return d;
    }

    Kind kind() const { return kind_; }
    bool is_polynomial() const { return kind_ != Kind::Smooth; }
    int nvars() const { return poly_.nvars; }
    int degree() const { return is_polynomial() ? poly_.degree() : -1; }
    const Poly<Rat>& poly() const { return poly_; }
    const Poly<double>& dpoly() const { return dpoly_; }

    double operator()(const Vec<double>& x) const {
        return is_polynomial() ? dpoly_.eval(x) : fn_(x);
    }

    /// Translate: density(x) composed with x -> x + shift.
    Density translated(const Vec<double>& shift) const {
        if (is_polynomial()) {
            Mat<Rat> I = mat_identity<Rat>(poly_.nvars);
            Vec<Rat> o;
            for (double s : shift) o.push_back(rat_of_double(s));
            Density d;
            d.kind_ = kind_;
            d.poly_ = poly_.subst_affine(o, I, poly_.nvars);
            d.dpoly_ = poly_to_double(d.poly_);
            return d;
        }
        auto f = fn_;
        Vec<double> sh = shift;
        return smooth(poly_.nvars, [f, sh](const Vec<double>& x) {
            Vec<double> y = x;
            for (size_t i = 0; i < y.size(); ++i) y[i] += sh[i];
            return f(y);
        });
    }

  private:
    Kind kind_ = Kind::Constant;
    Poly<Rat> poly_;
    Poly<double> dpoly_;
    std::function<double(const Vec<double>&)> fn_;
};

struct IntegrationResult {
    double value = 0;
    Rat exact_value;
    bool exact = false;
    int order = 0;
};

/// Integral of mu over a full-dimensional polytope. Exact (rational) when mu
/// is polynomial and order >= deg mu; otherwise Grundmann-Moller of the
/// requested order over the interior-cone triangulation.
template <class T>
IntegrationResult integrate_density_t(const PolytopeT<T>& P, const Density& mu, int order = 6) {
    IntegrationResult res;
    res.order = order;
    if (P.d < P.n) { res.exact = ScalarTraits<T>::exact; res.exact_value = 0; return res; }
    if (mu.is_polynomial() && order < mu.degree())
        throw GeometryError("quadrature order below polynomial degree for exact-tagged density");
    if constexpr (ScalarTraits<T>::exact) {
        if (mu.is_polynomial()) {
            Rat acc(0);
            Poly<Rat> p = mu.poly();
            if (p.nvars != P.n) throw GeometryError("density dimension mismatch");
            if (P.d == 1) {
                // Interval: substitute x = a + (b-a) t and integrate over [0,1].
                Rat len = P.iverts[1][0] - P.iverts[0][0];
                Mat<Rat> M(1, Vec<Rat>(1, len));
                Poly<Rat> q = p.subst_affine(Vec<Rat>{P.iverts[0][0]}, M, 1);
                for (const auto& [e, c] : q.terms) acc += c / Rat(e[0] + 1);
                acc *= len;
            } else {
                for (const auto& simplex : P.tri) {
                    std::vector<Vec<Rat>> vs = {P.ipoint};
                    for (const auto& v : simplex) vs.push_back(v);
                    acc += integrate_poly_simplex(p, vs);
                }
            }
            res.exact = true;
            res.exact_value = acc;
            res.value = to_double(acc);
            return res;
        }
    }
    // Numeric path.
    int s = std::max(0, (order - 1 + 1) / 2);  // 2s+1 >= order
    auto f = [&](const Vec<double>& x) { return mu(x); };
    double acc = 0;
    std::vector<Vec<double>> vsd;
    if (P.d == 1) {
        Vec<double> a = {to_double(P.iverts[0][0])}, b = {to_double(P.iverts[1][0])};
        acc = integrate_fn_simplex(f, {a, b}, s);
    } else {
        for (const auto& simplex : P.tri) {
            vsd.clear();
            vsd.push_back(vec_to_double_any(P.ipoint));
            for (const auto& v : simplex) vsd.push_back(vec_to_double_any(v));
            acc += integrate_fn_simplex(f, vsd, s);
        }
    }
    res.exact = false;
    res.value = acc;
    return res;
}

}  // namespace minkval
