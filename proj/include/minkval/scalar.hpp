#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace minkval {

/// Exact rational scalar. All hull/volume predicates on rational-mode
/// geometry are evaluated with these, so there is no epsilon anywhere in
/// that path.
using Rat = mpq_class;

enum class Mode { Rational, Float };

inline const char* mode_name(Mode m) { return m == Mode::Rational ? "rational" : "float"; }

struct ModeMismatch : std::runtime_error {
    ModeMismatch() : std::runtime_error("mixing rational- and float-mode objects in one operation") {}
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Lossless: every double is a dyadic rational.
inline Rat rat_of_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite coordinate");
    return Rat(x);
}

inline Rat rat_of_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

/// Nearest rational with denominator <= max_den (continued fractions).
/// Used to put surrogate vertices exactly on circles/spheres.
inline Rat rat_approx(double x, long max_den = 1024) {
    bool neg = x < 0;
    double v = neg ? -x : x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 1e17) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rat r(p1, q1);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
    static constexpr bool exact = true;
    static constexpr Mode mode = Mode::Rational;
    static int sign(const Rat& x) { return sgn(x); }
    static Rat eps() { return Rat(0); }
    static Rat from_double(double x) { return rat_of_double(x); }
    static Rat from_int(long x) { return Rat(x); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr Mode mode = Mode::Float;
    // Geometric tolerance for float-mode predicates.
    static constexpr double geom_eps = 1e-9;
    static int sign(double x) { return x > geom_eps ? 1 : (x < -geom_eps ? -1 : 0); }
    static double eps() { return geom_eps; }
    static double from_double(double x) { return x; }
    static double from_int(long x) { return static_cast<double>(x); }
};

}  // namespace minkval
