#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minkval/pl_cycle.hpp"
#include "minkval/tube.hpp"

using namespace minkval;

namespace {
Vec<Rat> rv(std::initializer_list<long> xs) {
    Vec<Rat> v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}
}  // namespace

TEST_CASE("tube map basics") {
    auto ball = SupportBody::ball(2, 0.25);
    auto y = tube_map(ball, {1, 1}, {0, 1}, 0.5);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(1.125));
    auto y0 = tube_map(ball, {1, 1}, {0, 1}, 0.0);
    CHECK(y0[1] == doctest::Approx(1.0));
    auto ell = SupportBody::ellipsoid({2.0, 1.0});
    auto y2 = tube_map(ell, {0, 0}, {1, 0}, 1.0);
    CHECK(y2[0] == doctest::Approx(2.0));
}

TEST_CASE("tube pullback evaluation matches steiner values") {
    auto sq = Polytope(make_unit_cube<Rat>(2));
    GeneratorValuation per(2);
    per.add_smooth_term(Rat(1), Density::lebesgue(2),
                        {std::make_shared<SupportBody>(SupportBody::ball(2, 1.0))});
    auto t1 = tube_pullback_eval(per, sq);
    CHECK(t1.value == doctest::Approx(4.0).epsilon(1e-7));

    GeneratorValuation second(2);
    second.add_smooth_term(Rat(1), Density::lebesgue(2),
                           {std::make_shared<SupportBody>(SupportBody::ball(2, 1.0)),
                            std::make_shared<SupportBody>(SupportBody::ball(2, 1.0))});
    auto t2 = tube_pullback_eval(second, sq);
    CHECK(t2.value == doctest::Approx(2 * M_PI).epsilon(1e-7));

    // Two-path consistency against the surrogate evaluation route.
    auto e2 = eval_valuation(second, sq);
    CHECK(std::abs(t2.value - e2.value) / std::abs(t2.value) < 1e-4);

    // Polynomial density terms.
    GeneratorValuation polyterm(2);
    auto x2y2 = Poly<Rat>::variable(2, 0) * Poly<Rat>::variable(2, 0) +
                Poly<Rat>::variable(2, 1) * Poly<Rat>::variable(2, 1);
    polyterm.add_smooth_term(Rat(1), Density::polynomial(x2y2),
                             {std::make_shared<SupportBody>(SupportBody::ball(2, 1.0))});
    auto t3 = tube_pullback_eval(polyterm, sq);
    auto e3 = eval_valuation(polyterm, sq);
    CHECK(std::abs(t3.value - e3.value) / std::abs(e3.value) < 1e-5);
}

TEST_CASE("tube injectivity sampling") {
    // Convex segment: no collisions at any scale.
    auto seg = make_segment<Rat>(rv({0, 0}), rv({2, 0}));
    auto Nseg = normal_cycle_t(seg);
    auto ball = SupportBody::ball(2, 1.0);
    auto rep = tube_injectivity_check(Nseg, ball, 0.5, 4000, 11);
    CHECK(rep.certified);

    // Two points at distance d: safe below d/2, collisions found at 0.8 d.
    std::vector<Vec<double>> two = {{0, 0}, {1, 0}};
    auto N2 = point_set_cycle(two);
    auto safe = tube_injectivity_check(N2, ball, 0.4, 20000, 12);
    CHECK(safe.certified);
    auto sharp = tube_injectivity_check(N2, ball, 0.8, 20000, 13);
    CHECK(sharp.collisions > 0);
}

TEST_CASE("reach estimation and the diffeomorphism bound") {
    // Circle of radius r.
    double r = 1.7;
    std::vector<Vec<double>> pts, nrm;
    for (int k = 0; k < 256; ++k) {
        double th = 2 * M_PI * k / 256;
        nrm.push_back({std::cos(th), std::sin(th)});
        pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    CHECK(reach_estimate(pts, nrm, 100.0, false) == doctest::Approx(r).epsilon(1e-3));

    // Convex polygon: capped (no positive-height pairs).
    std::mt19937_64 rng(3);
    auto P = random_lattice_polygon(rng, 8, 5);
    std::vector<Vec<double>> pp, nn;
    int m = (int)P.verts.size();
    for (int i = 0; i < m; ++i) {
        Vec<double> a = vec_to_double(P.verts[i]), b = vec_to_double(P.verts[(i + 1) % m]);
        Vec<double> nrm2 = normalized(vec_to_double(P.ifacets[i].a));
        for (int s = 0; s < 12; ++s) {
            double t = (s + 0.5) / 12;
            pp.push_back(add(scale(a, 1 - t), scale(b, t)));
            nn.push_back(nrm2);
        }
    }
    CHECK(reach_estimate(pp, nn, 50.0) == doctest::Approx(50.0));

    // Two points at distance d -> d/2.
    std::vector<Vec<double>> q = {{0, 0}, {2, 0}}, qn = {{1, 0}, {-1, 0}};
    CHECK(reach_estimate(q, qn, 100.0) == doctest::Approx(1.0).epsilon(1e-12));

    // Bound formula cases.
    CHECK(reach_bound(1.0, 0.0, 1.0) == doctest::Approx(0.5));
    CHECK(reach_bound(0.5, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(reach_bound(1.0, 2.0, 10.0) == doctest::Approx(0.5));
}

TEST_CASE("federer and strict convexity margins") {
    // Samples on a circle of radius 2 (reach 2): margin nonnegative for
    // delta0 <= 2.
    std::vector<Vec<double>> pts, nrm;
    for (int k = 0; k < 64; ++k) {
        double th = 2 * M_PI * k / 64;
        nrm.push_back({std::cos(th), std::sin(th)});
        pts.push_back({2 * std::cos(th), 2 * std::sin(th)});
    }
    CHECK(federer_monotonicity_margin(pts, nrm, 2.0) >= -1e-12);
    // Ball of radius 2 has all curvatures 1/2.
    CHECK(strict_convexity_margin(SupportBody::ball(2, 2.0), 0.5, 128) >= -1e-9);
    CHECK(strict_convexity_margin(SupportBody::ellipsoid({2.0, 1.0}), 0.25, 128) >= -1e-9);
}

TEST_CASE("pl convex functions and differential cycles in 1d") {
    // f(x) = |x|: pieces x and -x.
    auto f = PLConvexFunction::make(1, {{rv({1}), Rat(0)}, {rv({-1}), Rat(0)}}, 1.0);
    auto D = differential_cycle(f);
    REQUIRE(D.cells.size() == 3);
    CHECK(closedness_check(D));
    int horizontals = 0, verticals = 0;
    for (const auto& c : D.cells) {
        if (c.kind == DifferentialCycle::Kind::Horizontal) ++horizontals;
        if (c.kind == DifferentialCycle::Kind::VerticalEdge) ++verticals;
    }
    CHECK(horizontals == 2);
    CHECK(verticals == 1);
}

TEST_CASE("max/min additivity for pl cycles") {
    // f = max(x,0), g = max(-x,0): min == 0, max == |x|; exact zero residual.
    auto f = PLConvexFunction::make(1, {{rv({1}), Rat(0)}, {rv({0}), Rat(0)}}, 2.0);
    auto g = PLConvexFunction::make(1, {{rv({-1}), Rat(0)}, {rv({0}), Rat(0)}}, 2.0);
    auto rep = maxmin_additivity_check(f, g, 25, 7);
    CHECK(rep.closed);
    CHECK(rep.max_residual == Rat(0));

    // f == g.
    auto rep2 = maxmin_additivity_check(f, f, 10, 8);
    CHECK(rep2.max_residual == Rat(0));

    // Random 1d convex pairs with convex minimum: sorted slopes, one crossing.
    std::mt19937_64 rng(19);
    for (int it = 0; it < 6; ++it) {
        long a = (long)(rng() % 5) + 1, b = (long)(rng() % 3) + 1;
        auto f1 = PLConvexFunction::make(
            1, {{rv({-a}), Rat(0)}, {rv({(long)(rng() % 3)}), Rat(-(long)(rng() % 2))}, {rv({b + 3}), Rat(-2)}},
            3.0);
        auto g1 = PLConvexFunction::make(1, {{rv({-1}), Rat(1)}, {rv({2}), Rat(0)}}, 3.0);
        try {
            auto rep3 = maxmin_additivity_check(f1, g1, 15, 100 + it);
            CHECK(rep3.max_residual == Rat(0));
            CHECK(rep3.closed);
        } catch (const GeometryError&) {
            // min not convex for this draw: acceptable, hypothesis is essential
        }
    }
}

TEST_CASE("2d differential cycles") {
    // Pyramid |x| v |y|: 4 regions meet at the origin.
    auto f = PLConvexFunction::make(2,
                                    {{rv({1, 0}), Rat(0)},
                                     {rv({-1, 0}), Rat(0)},
                                     {rv({0, 1}), Rat(0)},
                                     {rv({0, -1}), Rat(0)}},
                                    2.0);
    auto D = differential_cycle(f);
    CHECK(closedness_check(D));
    int vertex_cells = 0;
    for (const auto& c : D.cells)
        if (c.kind == DifferentialCycle::Kind::VertexCell) ++vertex_cells;
    CHECK(vertex_cells == 1);

    // h_P of the unit square restricted to a box: the vertical cells over the
    // normal fan reproduce the square's edges in the dual slot.
    auto sq = make_unit_cube<Rat>(2);
    std::vector<std::pair<Vec<Rat>, Rat>> pieces;
    for (const auto& v : sq.verts) pieces.push_back({v, Rat(0)});
    auto hP = PLConvexFunction::make(2, pieces, 3.0);
    auto DH = differential_cycle(hP);
    CHECK(closedness_check(DH));
    int verticals = 0;
    for (const auto& c : DH.cells) {
        if (c.kind != DifferentialCycle::Kind::VerticalEdge) continue;
        ++verticals;
        // dual segment is an edge of the square
        Vec<Rat> d = sub(c.dual_to, c.dual_from);
        CHECK((sgn(d[0]) == 0 || sgn(d[1]) == 0));
    }
    CHECK(verticals == 4);

    // 2d max/min additivity, exact.
    auto g2 = PLConvexFunction::make(2, {{rv({1, 1}), Rat(-1)}, {rv({0, 0}), Rat(0)}}, 2.0);
    auto f2 = PLConvexFunction::make(2, {{rv({1, 1}), Rat(0)}, {rv({0, 0}), Rat(0)}}, 2.0);
    // min(f2, g2) = g2 (g2 <= f2 pointwise? <x,(1,1)>-1 <= max(...)). Use
    // comparable pair so the min is convex.
    auto rep = maxmin_additivity_check(f2, g2, 10, 3);
    CHECK(rep.max_residual == Rat(0));
    CHECK(rep.closed);
}

TEST_CASE("pl integral condition") {
    // T(phi pi^* dvol) = integral of phi(x, grad f): forms with I = x-slots.
    auto f = PLConvexFunction::make(1, {{rv({1}), Rat(0)}, {rv({-1}), Rat(0)}}, 1.0);
    auto D = differential_cycle(f);
    RatPolyForm phi;
    phi.d = 1;
    RatPolyForm::Term t;
    t.I = {0};            // dx
    t.expo = {1, 2, 0, 0};  // x * y^2 ... only 2 slots for d=1: expo size 2
    t.expo = {2, 1};
    t.c = Rat(1);
    phi.terms.push_back(t);
    // integral over the cycle of x^2 y dx where y = grad f: horizontal parts:
    // int_{-1}^{0} x^2 (-1) dx + int_0^1 x^2 (+1) dx = -1/3... left piece has
    // gradient -1: contributes int x^2 * (-1)... value = (-1)*( -(-1/3) )...
    // compute directly: int_{-1}^0 x^2*(-1) dx = -1/3; int_0^1 x^2*(1) dx = 1/3.
    // vertical cell at x=0 contributes 0 to dx-forms.
    Rat v = integrate_form_exact(D, phi);
    CHECK(v == Rat(0));
    RatPolyForm phi2;
    phi2.d = 1;
    RatPolyForm::Term t2;
    t2.I = {0};
    t2.expo = {1, 1};  // x*y dx
    t2.c = Rat(1);
    phi2.terms.push_back(t2);
    // int_{-1}^0 x(-1) + int_0^1 x(1) = 1/2 + 1/2 = 1
    CHECK(integrate_form_exact(D, phi2) == Rat(1));
}
