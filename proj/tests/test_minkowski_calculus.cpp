#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minkval/valuation.hpp"

using namespace minkval;

namespace {
Vec<Rat> rv(std::initializer_list<long> xs) {
    Vec<Rat> v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}
}  // namespace

TEST_CASE("minkowski polynomial examples") {
    auto sq = make_unit_cube<Rat>(2);
    // vol(square + lambda square) = (1+lambda)^2.
    auto p1 = minkowski_polynomial(Density::lebesgue(2), sq, {&sq});
    CHECK(p1.coeffs[{0}] == Rat(1));
    CHECK(p1.coeffs[{1}] == Rat(2));
    CHECK(p1.coeffs[{2}] == Rat(1));

    // K = {0}, A = B = unit square: lambda1^2 + 2 lambda1 lambda2 + lambda2^2.
    auto pt = make_point<Rat>(rv({0, 0}));
    auto p2 = minkowski_polynomial(Density::lebesgue(2), pt, {&sq, &sq});
    CHECK(p2.coeffs[{2, 0}] == Rat(1));
    CHECK(p2.coeffs[{1, 1}] == Rat(2));
    CHECK(p2.coeffs[{0, 2}] == Rat(1));

    // Diamond body (inscribed 4-gon of the unit disk): 1 + 4 lambda + 2 lambda^2.
    auto diamond = convex_hull_t<Rat>({rv({1, 0}), rv({0, 1}), rv({-1, 0}), rv({0, -1})});
    auto p3 = minkowski_polynomial(Density::lebesgue(2), sq, {&diamond});
    CHECK(p3.coeffs[{0}] == Rat(1));
    CHECK(p3.coeffs[{1}] == Rat(4));
    CHECK(p3.coeffs[{2}] == Rat(2));

    // Polynomiality invariant: evaluation at random integer lambda matches
    // direct volumes exactly.
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> U(0, 5);
    for (int it = 0; it < 8; ++it) {
        Vec<Rat> lam = {Rat(U(rng)), Rat(U(rng))};
        Rat direct = volume_t(minkowski_sum_t(
            minkowski_sum_t(sq, scale_t(sq, lam[0])), scale_t(diamond, lam[1])));
        auto p4 = minkowski_polynomial(Density::lebesgue(2), sq, {&sq, &diamond});
        CHECK(p4.eval(lam) == direct);
    }
}

TEST_CASE("mixed derivatives at zero") {
    auto sq = make_unit_cube<Rat>(2);
    auto pt = make_point<Rat>(rv({0, 0}));
    auto d = mixed_derivative_poly(Density::lebesgue(2), pt,
                                   std::vector<const PolytopeT<Rat>*>{&sq, &sq});
    CHECK(d.exact);
    CHECK(d.exact_value == Rat(2));  // 2 V(A,B)

    // Steiner coefficients with a rational disk surrogate.
    auto D = rational_circle_gon(256, Rat(1));
    auto d1 = mixed_derivative_poly(Density::lebesgue(2), sq, std::vector<const PolytopeT<Rat>*>{&D});
    CHECK(to_double(d1.exact_value) == doctest::Approx(4.0).epsilon(1e-3));  // perimeter
    auto d2 = mixed_derivative_poly(Density::lebesgue(2), sq,
                                    std::vector<const PolytopeT<Rat>*>{&D, &D});
    CHECK(to_double(d2.exact_value) == doctest::Approx(2 * M_PI).epsilon(1e-3));

    // Symmetry under permutation of the bodies.
    std::mt19937_64 rng(2);
    auto A = random_lattice_polygon(rng, 7, 5), B = random_lattice_polygon(rng, 7, 5);
    auto K = random_lattice_polygon(rng, 7, 5);
    auto dab = mixed_derivative_poly(Density::lebesgue(2), K, std::vector<const PolytopeT<Rat>*>{&A, &B});
    auto dba = mixed_derivative_poly(Density::lebesgue(2), K, std::vector<const PolytopeT<Rat>*>{&B, &A});
    CHECK(dab.exact_value == dba.exact_value);

    // Minkowski additivity in each slot.
    auto C = minkowski_sum_t(scale_t(A, Rat(2)), scale_t(B, Rat(3)));
    auto dc = mixed_derivative_poly(Density::lebesgue(2), K, std::vector<const PolytopeT<Rat>*>{&C});
    auto da = mixed_derivative_poly(Density::lebesgue(2), K, std::vector<const PolytopeT<Rat>*>{&A});
    auto db = mixed_derivative_poly(Density::lebesgue(2), K, std::vector<const PolytopeT<Rat>*>{&B});
    CHECK(dc.exact_value == Rat(2) * da.exact_value + Rat(3) * db.exact_value);
}

TEST_CASE("numeric derivative path agrees with the exact one") {
    auto sq = make_unit_cube<Rat>(2);
    auto A = convex_hull_t<Rat>({rv({1, 0}), rv({0, 1}), rv({-1, 0}), rv({0, -1})});
    auto ex = mixed_derivative_poly(Density::polynomial(Poly<Rat>::variable(2, 0) * Poly<Rat>::variable(2, 0)),
                                    sq, std::vector<const PolytopeT<Rat>*>{&A});
    auto sm = Density::smooth(2, [](const Vec<double>& x) { return x[0] * x[0]; });
    auto nm = mixed_derivative_numeric(sm, sq, std::vector<const PolytopeT<Rat>*>{&A});
    CHECK(nm.value == doctest::Approx(to_double(ex.exact_value)).epsilon(1e-6));
    CHECK(std::abs(nm.value - to_double(ex.exact_value)) <= std::max(1e-7, 10 * nm.error_estimate));
}

TEST_CASE("generator valuations evaluate") {
    auto sq = Polytope(make_unit_cube<Rat>(2));
    // Plain volume.
    GeneratorValuation vol2(2);
    vol2.add_term(Rat(1), Density::lebesgue(2), {});
    auto e = eval_valuation(vol2, sq);
    CHECK(e.exact);
    CHECK(e.exact_value == Rat(1));

    // Perimeter valuation via a smooth ball term.
    GeneratorValuation per(2);
    per.add_smooth_term(Rat(1), Density::lebesgue(2),
                        {std::make_shared<SupportBody>(SupportBody::ball(2, 1.0))});
    auto e2 = eval_valuation(per, sq);
    CHECK(e2.value == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(e2.error_estimate < 1e-3);
    CHECK(e2.method == "numeric");

    // Linearity: (2 psi)(K) = 2 psi(K), (psi + phi) adds.
    auto e3 = eval_valuation(vol2.scaled(Rat(2)), sq);
    CHECK(e3.exact_value == Rat(2));
    auto e4 = eval_valuation(vol2 + vol2, sq);
    CHECK(e4.exact_value == Rat(2));
}

TEST_CASE("euler characteristic is exactly 1 on polytopes") {
    for (int n = 1; n <= 3; ++n) {
        auto chi = euler_generator(n);
        std::vector<Polytope> Ks;
        if (n == 1) {
            Ks.push_back(Polytope(make_segment<Rat>({Rat(2)}, {Rat(5)})));
            Ks.push_back(Polytope(make_point<Rat>({Rat(7)})));
        } else if (n == 2) {
            std::mt19937_64 rng(3);
            Ks.push_back(Polytope(random_lattice_polygon(rng, 8, 6)));
            Ks.push_back(Polytope(make_unit_cube<Rat>(2)));
            Ks.push_back(Polytope(make_point<Rat>(rv({1, 2}))));
        } else {
            Ks.push_back(Polytope(make_unit_cube<Rat>(3)));
            Ks.push_back(Polytope(make_standard_simplex<Rat>(3)));
        }
        for (const auto& K : Ks) {
            auto e = eval_valuation(chi, K);
            CHECK(e.exact);
            CHECK(e.exact_value == Rat(1));
        }
    }
}

TEST_CASE("valuation property and unions") {
    auto chi = euler_generator(2);
    auto sq = Polytope(make_unit_cube<Rat>(2));
    auto sq_far = Polytope(translate_t(make_unit_cube<Rat>(2), rv({5, 5})));
    auto e = eval_on_union(chi, {sq, sq_far});
    CHECK(e.exact_value == Rat(2));

    auto sq_mid = Polytope(translate_t(make_unit_cube<Rat>(2), Vec<Rat>{Rat(1, 2), Rat(0)}));
    auto e2 = eval_on_union(chi, {sq, sq_mid});
    CHECK(e2.exact_value == Rat(1));

    GeneratorValuation vol2(2);
    vol2.add_term(Rat(1), Density::lebesgue(2), {});
    auto e3 = eval_on_union(vol2, {sq, sq_mid});
    CHECK(e3.exact_value == Rat(3, 2));

    // psi(A u B) + psi(A n B) = psi(A) + psi(B) on edge-sharing translates.
    auto sq_edge = Polytope(translate_t(make_unit_cube<Rat>(2), rv({1, 0})));
    auto lhs = eval_on_union(chi, {sq, sq_edge});
    auto inter = intersect_t(sq.rat(), sq_edge.rat());
    REQUIRE(inter.has_value());
    Rat rhs = eval_valuation(chi, sq).exact_value + eval_valuation(chi, sq_edge).exact_value -
              eval_valuation(chi, Polytope(*inter)).exact_value;
    CHECK(lhs.exact_value == rhs);
}

TEST_CASE("intrinsic volumes") {
    auto sq = Polytope(make_unit_cube<Rat>(2));
    CHECK(intrinsic_volume(sq, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(intrinsic_volume(sq, 0) == doctest::Approx(1.0));
    CHECK(intrinsic_volume(sq, 2) == doctest::Approx(1.0).epsilon(1e-12));

    auto cube = Polytope(make_unit_cube<Rat>(3));
    CHECK(intrinsic_volume(cube, 2) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(intrinsic_volume(cube, 1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(intrinsic_volume(cube, 3) == doctest::Approx(1.0).epsilon(1e-12));

    // Angle-sum identities.
    std::mt19937_64 rng(4);
    auto P = random_lattice_polygon(rng, 9, 6);
    CHECK(valdet::polygon_external_angle_sum(P) == doctest::Approx(1.0).epsilon(1e-12));
    auto Q = random_lattice_polytope(rng, 3, 12, 5);
    CHECK(valdet::vertex_solid_angle_sum(Q) == doctest::Approx(1.0).epsilon(1e-10));

    // Steiner check: vol(K + t B) = sum_j kappa_{n-j} t^{n-j} V_j(K) for the
    // exact disk (limit via dense surrogate).
    auto K = random_lattice_polygon(rng, 8, 5);
    double t = 0.75;
    auto D = rational_circle_gon(512, rat_approx(t, 1 << 20));
    double lhs = to_double(volume_t(minkowski_sum_t(K, D)));
    double rhs = intrinsic_volume(Polytope(K), 2) + 2 * t * intrinsic_volume(Polytope(K), 1) +
                 M_PI * t * t;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-3));
}

TEST_CASE("euler generator on segments matches the 1d formula") {
    auto chi1 = euler_generator(1);
    REQUIRE(chi1.terms().size() == 1);
    CHECK(chi1.terms()[0].weight == Rat(1, 2));
    auto seg = Polytope(make_segment<Rat>({Rat(0)}, {Rat(3)}));
    CHECK(eval_valuation(chi1, seg).exact_value == Rat(1));
}

TEST_CASE("bound probe stays finite and scale-invariant") {
    SupportBody ball = SupportBody::ball(2, 1.0);
    auto rep = cormink_bound_probe(Density::lebesgue(2), 1.0, {&ball}, 10, 99);
    CHECK(rep.max_ratio > 0);
    CHECK(rep.fitted_constant < 100);
    // Scale the body: ratio invariant (degree-1 homogeneity both sides).
    SupportBody big = SupportBody::ball(2, 2.0);
    auto rep2 = cormink_bound_probe(Density::lebesgue(2), 1.0, {&big}, 10, 99);
    CHECK(rep2.max_ratio == doctest::Approx(rep.max_ratio).epsilon(1e-6));
}
