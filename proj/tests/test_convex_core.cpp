#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minkval/bodies.hpp"
#include "minkval/density.hpp"
#include "minkval/ops.hpp"

using namespace minkval;

namespace {

Vec<Rat> rv(std::initializer_list<long> xs) {
    Vec<Rat> v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

Rat rq(long p, long q) { return Rat(p, q); }

}  // namespace

TEST_CASE("hull drops interior points and keeps the lattice consistent") {
    std::vector<Vec<Rat>> pts = {rv({0, 0}), rv({1, 0}), rv({1, 1}), rv({0, 1})};
    pts.push_back({rq(1, 2), rq(1, 2)});
    auto P = convex_hull_t(pts);
    CHECK(P.d == 2);
    CHECK(P.verts.size() == 4);
    CHECK(P.ifacets.size() == 4);
    CHECK(volume_t(P) == Rat(1));
}

TEST_CASE("hull of collinear points is a segment") {
    auto P = convex_hull_t<Rat>({rv({0, 0}), rv({1, 1}), rv({2, 2})});
    CHECK(P.d == 1);
    CHECK(P.verts.size() == 2);
    CHECK(same_vertex_set(P, make_segment<Rat>(rv({0, 0}), rv({2, 2}))));
    CHECK(volume_t(P) == Rat(0));
}

TEST_CASE("hull of 5 affinely independent points in R^4 is a simplex") {
    std::vector<Vec<Rat>> pts = {rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}),
                                 rv({0, 0, 1, 0}), rv({0, 0, 0, 1})};
    auto P = convex_hull_t(pts);
    CHECK(P.d == 4);
    CHECK(P.verts.size() == 5);
    CHECK(P.ifacets.size() == 5);
    CHECK(volume_t(P) == rq(1, 24));
}

TEST_CASE("hull with non-extreme collinear boundary point") {
    // Midpoint of an edge must not survive as a vertex.
    std::vector<Vec<Rat>> pts = {rv({0, 0}), rv({2, 0}), rv({1, 0}), rv({0, 2})};
    auto P = convex_hull_t(pts);
    CHECK(P.verts.size() == 3);
    CHECK(volume_t(P) == Rat(2));
}

TEST_CASE("minkowski sums") {
    auto sq = make_unit_cube<Rat>(2);
    auto S = minkowski_sum_t(sq, sq);
    CHECK(volume_t(S) == Rat(4));
    CHECK(S.verts.size() == 4);

    auto e1 = make_segment<Rat>(rv({0, 0}), rv({1, 0}));
    auto e2 = make_segment<Rat>(rv({0, 0}), rv({0, 1}));
    auto Q = minkowski_sum_t(e1, e2);
    CHECK(Q.d == 2);
    CHECK(volume_t(Q) == Rat(1));

    auto T = convex_hull_t<Rat>({rv({0, 0}), rv({1, 0}), rv({0, 1})});
    auto H = minkowski_sum_t(T, reflect_t(T));
    CHECK(H.verts.size() == 6);
    CHECK(volume_t(H) == Rat(3));
}

TEST_CASE("affine images") {
    auto sq = make_unit_cube<Rat>(2);
    auto Tr = affine_image_t(sq, mat_identity<Rat>(2), rv({1, 0}));
    CHECK(volume_t(Tr) == Rat(1));

    Mat<Rat> M2 = {{Rat(2), Rat(0)}, {Rat(0), Rat(2)}};
    CHECK(volume_t(affine_image_t(sq, M2, rv({0, 0}))) == Rat(4));

    Mat<Rat> Pr = {{Rat(1), Rat(0)}, {Rat(0), Rat(0)}};
    auto Pj = affine_image_t(sq, Pr, rv({0, 0}));
    CHECK(Pj.d == 1);
}

TEST_CASE("volumes") {
    CHECK(volume_t(make_unit_cube<Rat>(3)) == Rat(1));
    for (int n = 1; n <= 5; ++n) {
        Rat f(1);
        for (int i = 2; i <= n; ++i) f *= Rat(i);
        CHECK(volume_t(make_standard_simplex<Rat>(n)) == Rat(1) / f);
    }
    // Zonotope of segments (c,c), (a,0), (0,b): area ab + ca + cb.
    long a = 3, b = 5, c = 2;
    auto Z = minkowski_sum_t(
        minkowski_sum_t(make_segment<Rat>(rv({0, 0}), rv({c, c})), make_segment<Rat>(rv({0, 0}), rv({a, 0}))),
        make_segment<Rat>(rv({0, 0}), rv({0, b})));
    CHECK(volume_t(Z) == Rat(a * b + c * a + c * b));
}

TEST_CASE("density integration on the unit square") {
    auto sq = make_unit_cube<Rat>(2);
    CHECK(integrate_density_t(sq, Density::lebesgue(2)).exact_value == Rat(1));
    auto x = Poly<Rat>::variable(2, 0);
    CHECK(integrate_density_t(sq, Density::polynomial(x)).exact_value == rq(1, 2));
    auto y = Poly<Rat>::variable(2, 1);
    CHECK(integrate_density_t(sq, Density::polynomial(x * x + y * y)).exact_value == rq(2, 3));
    // Numeric path agrees.
    auto num = integrate_density_t(sq, Density::smooth(2, [](const Vec<double>& p) {
                                       return p[0] * p[0] + p[1] * p[1];
                                   }),
                                   6);
    CHECK(num.value == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("support evaluation") {
    auto sq = make_unit_cube<Rat>(2);
    auto r1 = support_eval_t(sq, rv({1, 0}));
    CHECK(r1.value == Rat(1));
    CHECK(r1.verts.size() == 2);  // right edge
    auto r2 = support_eval_t(sq, rv({1, 1}));
    CHECK(r2.value == Rat(2));
    CHECK(r2.verts.size() == 1);
    auto seg = make_segment<Rat>(rv({0, 0}), rv({2, 2}));
    auto r3 = support_eval_t(seg, rv({1, -1}));
    CHECK(r3.value == Rat(0));
    CHECK(r3.verts.size() == 2);  // whole segment
    CHECK_THROWS(support_eval_t(sq, rv({0, 0})));
    // positive homogeneity
    auto r4 = support_eval_t(sq, rv({3, 3}));
    CHECK(r4.value == Rat(3) * r2.value);
}

TEST_CASE("halfspace intersection round trips") {
    auto sq = make_unit_cube<Rat>(2);
    auto H = ambient_hrep(sq);
    auto back = halfspace_intersection_t(H.ineq);
    CHECK(same_vertex_set(sq, back));
    CHECK(back.ifacets.size() == 4);

    // [0,1]^2 with x >= 1/2 strip.
    auto hs = H.ineq;
    hs.push_back({rv({-1, 0}), rq(-1, 2)});
    auto R = halfspace_intersection_t(hs);
    CHECK(volume_t(R) == rq(1, 2));

    // Infeasible system.
    std::vector<std::pair<Vec<Rat>, Rat>> bad = {
        {rv({-1, 0}), Rat(0)}, {rv({0, -1}), Rat(0)}, {rv({1, 1}), Rat(-1)}};
    CHECK_THROWS_AS(halfspace_intersection_t(bad), EmptyIntersectionError);
}

TEST_CASE("polytope intersection including degenerate touching") {
    auto sq = make_unit_cube<Rat>(2);
    auto sq2 = translate_t(sq, rv({1, 0}));  // shares the edge x=1
    auto I = intersect_t(sq, sq2);
    REQUIRE(I.has_value());
    CHECK(I->d == 1);
    CHECK(same_vertex_set(*I, make_segment<Rat>(rv({1, 0}), rv({1, 1}))));

    auto sq3 = translate_t(sq, rv({3, 3}));
    CHECK(!intersect_t(sq, sq3).has_value());

    auto sq4 = translate_t(sq, Vec<Rat>{rq(1, 2), Rat(0)});
    auto J = intersect_t(sq, sq4);
    REQUIRE(J.has_value());
    CHECK(volume_t(*J) == rq(1, 2));

    // Corner touching: a single point.
    auto sq5 = translate_t(sq, rv({1, 1}));
    auto K = intersect_t(sq, sq5);
    REQUIRE(K.has_value());
    CHECK(K->d == 0);
}

TEST_CASE("face cones of the unit square") {
    auto sq = make_unit_cube<Rat>(2);
    // Find vertex (0,0).
    int vid = -1;
    for (int i = 0; i < (int)sq.verts.size(); ++i)
        if (sq.verts[i] == rv({0, 0})) vid = i;
    REQUIRE(vid >= 0);
    int fidx = -1;
    for (int i = 0; i < (int)sq.faces[0].size(); ++i)
        if (sq.faces[0][i].verts[0] == vid) fidx = i;
    auto C = face_cones_t(sq, 0, fidx);
    // Tangent cone = first quadrant: all generators have nonneg coords.
    for (const auto& g : C.tangent) {
        CHECK(sgn(g[0]) >= 0);
        CHECK(sgn(g[1]) >= 0);
    }
    CHECK(C.normal.size() == 2);
    // Polarity: <t, n> <= 0 for all pairs.
    for (const auto& t : C.tangent)
        for (const auto& nn : C.normal) CHECK(sgn(dot(t, nn)) <= 0);

    // Whole-polytope face: normal cone empty.
    auto CI = face_cones_t(sq, 2, 0);
    CHECK(CI.normal.empty());
}

TEST_CASE("diagonal embedding") {
    long a = 2, b = 3, c = 1;
    auto K = make_segment<Rat>(Vec<Rat>{Rat(0)}, Vec<Rat>{Rat(c)});
    auto A = make_segment<Rat>(Vec<Rat>{Rat(0)}, Vec<Rat>{Rat(a)});
    auto B = make_segment<Rat>(Vec<Rat>{Rat(0)}, Vec<Rat>{Rat(b)});
    auto E = diagonal_embed_t(K, {&A, &B});
    CHECK(E.n == 2);
    CHECK(volume_t(E) == Rat(a * b + c * a + c * b));

    auto O = make_point<Rat>(Vec<Rat>{Rat(0)});
    auto E2 = diagonal_embed_t(O, {&A, &B});
    CHECK(volume_t(E2) == Rat(a * b));

    auto Z = make_point<Rat>(Vec<Rat>{Rat(0)});
    auto E3 = diagonal_embed_t(make_segment<Rat>(Vec<Rat>{Rat(0)}, Vec<Rat>{Rat(1)}), {&Z, &Z});
    CHECK(E3.d == 1);
    CHECK(volume_t(E3) == Rat(0));

    // Coordinate swap symmetry: vol(Delta K + A x B) == vol(Delta K + B x A).
    auto E4 = diagonal_embed_t(K, {&B, &A});
    CHECK(volume_t(E4) == volume_t(E));
}

TEST_CASE("hull idempotence and H-V round trip on random polytopes") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 10; ++it) {
        auto P = random_lattice_polygon(rng, 9, 7);
        auto P2 = convex_hull_t(P.verts);
        CHECK(same_vertex_set(P, P2));
        CHECK(P.ifacets.size() == P2.ifacets.size());
        auto back = halfspace_intersection_t(ambient_hrep(P).ineq);
        CHECK(same_vertex_set(P, back));
    }
    for (int it = 0; it < 5; ++it) {
        auto P = random_lattice_polytope(rng, 3, 12, 5);
        auto P2 = convex_hull_t(P.verts);
        CHECK(same_vertex_set(P, P2));
        auto back = halfspace_intersection_t(ambient_hrep(P).ineq);
        CHECK(same_vertex_set(P, back));
    }
}

TEST_CASE("support additivity under minkowski sum") {
    std::mt19937_64 rng(7);
    auto P = random_lattice_polygon(rng, 8, 6);
    auto Q = random_lattice_polygon(rng, 8, 6);
    auto S = minkowski_sum_t(P, Q);
    std::uniform_int_distribution<long> U(-9, 9);
    for (int it = 0; it < 40; ++it) {
        Vec<Rat> u = {Rat(U(rng)), Rat(U(rng))};
        if (sgn(u[0]) == 0 && sgn(u[1]) == 0) continue;
        CHECK(support_eval_t(S, u).value == support_eval_t(P, u).value + support_eval_t(Q, u).value);
    }
}

TEST_CASE("volume scaling and translation invariance") {
    std::mt19937_64 rng(3);
    auto P = random_lattice_polytope(rng, 3, 10, 4);
    Rat v = volume_t(P);
    CHECK(volume_t(scale_t(P, Rat(3))) == Rat(27) * v);
    CHECK(volume_t(translate_t(P, rv({5, -2, 1}))) == v);
}

TEST_CASE("float mode hull with tolerance") {
    std::vector<Vec<double>> pts;
    for (int k = 0; k < 64; ++k) {
        double th = 2 * M_PI * k / 64;
        pts.push_back({std::cos(th), std::sin(th)});
    }
    pts.push_back({0.5, 0.5});
    auto P = convex_hull_t(pts);
    CHECK(P.verts.size() == 64);
    double area = to_double(volume_t(P));
    CHECK(area == doctest::Approx(0.5 * 64 * std::sin(2 * M_PI / 64)).epsilon(1e-12));
}

TEST_CASE("rational circle gon has vertices exactly on the circle") {
    auto D = rational_circle_gon(32, Rat(1));
    CHECK(D.verts.size() == 32);
    for (const auto& v : D.verts) CHECK(v[0] * v[0] + v[1] * v[1] == Rat(1));
    double area = to_double(volume_t(D));
    CHECK(area == doctest::Approx(M_PI).epsilon(0.02));

    auto S = rational_sphere_polytope(64, Rat(1));
    for (const auto& v : S.verts) CHECK(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] == Rat(1));
    CHECK(to_double(volume_t(S)) == doctest::Approx(4 * M_PI / 3).epsilon(0.15));
}

TEST_CASE("lp solver basics") {
    // max x + y st x <= 2, y <= 3, x + y <= 4
    Mat<Rat> A = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}};
    Vec<Rat> b = {Rat(2), Rat(3), Rat(4)};
    auto r = lp_maximize(A, b, Vec<Rat>{Rat(1), Rat(1)});
    CHECK(r.status == LpResult<Rat>::Optimal);
    CHECK(r.objective == Rat(4));
    // Unbounded.
    auto r2 = lp_maximize(Mat<Rat>{{Rat(-1), Rat(0)}}, Vec<Rat>{Rat(0)}, Vec<Rat>{Rat(1), Rat(0)});
    CHECK(r2.status == LpResult<Rat>::Unbounded);
    // Infeasible detection via slack LP.
    std::vector<std::pair<Vec<Rat>, Rat>> hs = {
        {rv({1, 0}), Rat(0)}, {rv({-1, 0}), Rat(-1)}};
    auto [t, x] = max_slack_point(hs, 2);
    CHECK(sgn(t) < 0);
}
