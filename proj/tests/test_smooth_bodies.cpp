#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minkval/support_body.hpp"

using namespace minkval;

TEST_CASE("gradient points of presets") {
    auto ball = SupportBody::ball(2, 2.0);
    auto g = gradient_point(ball, {0, 1});
    CHECK(g.point[0] == doctest::Approx(0.0));
    CHECK(g.point[1] == doctest::Approx(2.0));
    CHECK(g.unique);

    auto ell = SupportBody::ellipsoid({2.0, 1.0});
    auto g2 = gradient_point(ell, {1, 0});
    CHECK(g2.point[0] == doctest::Approx(2.0));
    CHECK(g2.point[1] == doctest::Approx(0.0));

    auto g3 = gradient_point(SupportBody::ball(2, 1.0), {0.6, 0.8});
    CHECK(g3.point[0] == doctest::Approx(0.6));
    CHECK(g3.point[1] == doctest::Approx(0.8));
}

TEST_CASE("support body invariants on grids") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (auto body : {SupportBody::ball(2, 1.5), SupportBody::ellipsoid({2.0, 1.0})}) {
        // 1-homogeneity, Euler relation, sublinearity.
        for (int it = 0; it < 200; ++it) {
            Vec<double> u = {U(rng), U(rng)};
            if (norm(u) < 0.1) continue;
            CHECK(body.h(scale(u, 3.0)) == doctest::Approx(3 * body.h(u)).epsilon(1e-12));
            CHECK(dot(body.grad(u), u) == doctest::Approx(body.h(u)).epsilon(1e-10));
            Vec<double> v = {U(rng), U(rng)};
            CHECK(body.h(add(u, v)) <= body.h(u) + body.h(v) + 1e-10);
        }
        // Hessian annihilates u and is PSD on the tangent space.
        for (const auto& u : direction_grid_2d(90)) {
            auto H = body.hess(u);
            CHECK(norm(mat_apply(H, u)) == doctest::Approx(0.0).epsilon(1e-9));
            auto [lo, hi] = tangent_hessian_range(H, u);
            CHECK(lo > 0);
            CHECK(hi >= lo);
        }
    }
    // 3d ellipsoid Euler relation.
    auto E3 = SupportBody::ellipsoid({2.0, 1.0, 0.5});
    for (const auto& u : direction_grid_3d(1))
        CHECK(dot(E3.grad(u), u) == doctest::Approx(E3.h(u)).epsilon(1e-10));
}

TEST_CASE("curvature ranges") {
    auto b = SupportBody::ball(2, 2.0);
    auto r = curvature_range({&b}, {1.0}, direction_grid_2d(360));
    CHECK(r.kmin == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.kmax == doctest::Approx(0.5).epsilon(1e-12));

    auto e = SupportBody::ellipsoid({2.0, 1.0});
    auto r2 = curvature_range({&e}, {1.0}, direction_grid_2d(720));
    CHECK(r2.kmin == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(r2.kmax == doctest::Approx(2.0).epsilon(1e-4));

    auto b1 = SupportBody::ball(2, 1.0), b3 = SupportBody::ball(2, 3.0);
    auto r3 = curvature_range({&b1, &b3}, {0.5, 0.5}, direction_grid_2d(360));
    CHECK(r3.kmin == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r3.kmax == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("difference decomposition") {
    auto grid = direction_grid_2d(360);
    // Already a support function: T = 0.
    auto ell = hfn_ellipsoid({2.0, 1.0});
    auto d1 = decompose_difference(ell, grid);
    CHECK(d1.T == 0);

    // cos(3 theta)|u| is not convex: T > 0 and both parts PSD-validated.
    auto f = hfn_cosk(3);
    auto d2 = decompose_difference(f, grid);
    CHECK(d2.T > 0);
    for (const auto& u : grid) {
        auto [lo, hi] = tangent_hessian_range(d2.a_prime.hess(u), u);
        (void)hi;
        CHECK(lo >= 1e-8 - 1e-12);
    }
    // Pointwise reconstruction h = h_{A'} - h_{A''}.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int it = 0; it < 100; ++it) {
        Vec<double> u = {U(rng), U(rng)};
        if (norm(u) < 0.1) continue;
        double recon = d2.a_prime.h(u) - d2.a_second.h(u);
        CHECK(recon == doctest::Approx(f.h(u)).epsilon(1e-10));
    }

    // Difference of smoothed polytope support functions.
    std::mt19937_64 rng2(9);
    auto P = to_float(random_lattice_polygon(rng2, 6, 3));
    auto Q = to_float(random_lattice_polygon(rng2, 6, 3));
    auto hP = hfn_smoothed_polytope(P, 0.1), hQ = hfn_smoothed_polytope(Q, 0.1);
    auto diff = hfn_sum(hP, hfn_scale(hQ, -1.0));
    auto d3 = decompose_difference(diff, grid);
    for (int it = 0; it < 100; ++it) {
        Vec<double> u = {U(rng), U(rng)};
        if (norm(u) < 0.1) continue;
        double recon = d3.a_prime.h(u) - d3.a_second.h(u);
        CHECK(recon == doctest::Approx(diff.h(u)).epsilon(1e-10));
    }
}

TEST_CASE("inscribed polytopes") {
    auto ball = SupportBody::ball(2, 1.0);
    auto P4 = inscribed_polytope(ball, direction_grid_2d(4));
    CHECK(P4.verts.size() == 4);
    CHECK(to_double(volume_t(P4)) == doctest::Approx(2.0).epsilon(1e-12));

    for (int m : {8, 16, 64}) {
        auto Pm = inscribed_polytope(ball, direction_grid_2d(m));
        CHECK(Pm.verts.size() == (size_t)m);
        // All vertices at distance exactly 1 (within 1e-12).
        for (const auto& v : Pm.verts) CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
        // V1 = m sin(pi/m) for the regular m-gon (half-perimeter).
        double per = 0;
        for (int i = 0; i < m; ++i)
            per += norm(sub(Pm.verts[(i + 1) % m], Pm.verts[i]));
        CHECK(per / 2 == doctest::Approx(m * std::sin(M_PI / m)).epsilon(1e-9));
    }

    auto ell = SupportBody::ellipsoid({2.0, 1.0});
    auto Pe = inscribed_polytope(ell, direction_grid_2d(64));
    CHECK(to_double(volume_t(Pe)) == doctest::Approx(2 * M_PI).epsilon(0.005));

    // Minkowski linearity of gradients.
    auto b2 = SupportBody::ball(2, 0.5);
    for (const auto& u : direction_grid_2d(16)) {
        auto s = add(ell.grad(u), b2.grad(u));
        auto sumfn = hfn_sum(ell.fn(), b2.fn());
        CHECK(norm(sub(s, sumfn.grad(u))) == doctest::Approx(0.0).epsilon(1e-12));
    }

    CHECK_THROWS(inscribed_polytope(ball, {{1.0, 0.0}, {-1.0, 0.0}, {2.0, 0.0}}));
}
