#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alcove/catalog.hpp"
#include "alcove/quadruple.hpp"

using namespace alcove;

namespace {

Vec unit(int n, int i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

// Curvature of nablaK in ambient directions, valued in K-coordinates.
Vec curv_nablaK(const ConnectionQuadruple& q, const Vec& u, const Vec& v, const Vec& xi) {
    Vec t1 = q.nablaK.apply(u, q.nablaK.apply(v, xi));
    Vec t2 = q.nablaK.apply(v, q.nablaK.apply(u, xi));
    Vec t3 = q.nablaK.apply(q.g->tangent.bracket.apply(u, v), xi);
    return vec_sub(vec_sub(t1, t2), t3);
}

}  // namespace

TEST_CASE("validation of bracket axioms and the anchor morphism") {
    for (const auto& name : catalog_names()) {
        auto g = catalog_algebroid(name);
        CHECK(g.validate().ok());
    }
    SUBCASE("sl2-like data with [e,f] = e fails Jacobi at (h,e,f)") {
        InvariantAlgebroid g;
        Bracket b(3);
        b.at(0, 1, 1) = 2;
        b.at(1, 0, 1) = -2;
        b.at(0, 2, 2) = -2;
        b.at(2, 0, 2) = 2;
        b.at(1, 2, 1) = 1;  // [e, f] = e
        b.at(2, 1, 1) = -1;
        g.fiber = b;
        g.tangent.bracket = bracket_abelian(0);
        g.anchor = Mat(0, 3);
        auto rep = g.validate();
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].check == "fiber_jacobi");
        CHECK(rep.issues[0].detail.find("(0,1,2)") != std::string::npos);
    }
    SUBCASE("non-morphism anchor is reported") {
        InvariantAlgebroid g;
        g.fiber = bracket_sl2();
        g.tangent.bracket = bracket_abelian(1);
        g.anchor = Mat(1, 3);
        g.anchor.at(0, 0) = 1;  // rho(h) != 0 but rho[h,e] = 0 != [rho h, rho e] = 0... use e
        g.anchor.at(0, 1) = 1;
        auto rep = g.validate();
        CHECK(!rep.ok());
    }
}

TEST_CASE("atiyah_sequence dimensions and structure") {
    SUBCASE("zero anchor: K = g, F = 0, B = t") {
        auto g = catalog_algebroid("sl2-point");
        auto seq = atiyah_sequence(g);
        CHECK(seq.dK() == 3);
        CHECK(seq.dF() == 0);
        CHECK(seq.dB() == 0);
    }
    SUBCASE("identity anchor: K = 0, B = 0") {
        InvariantAlgebroid g;
        g.fiber = bracket_sl2();
        g.tangent.bracket = bracket_sl2();
        g.anchor = Mat::identity(3);
        auto seq = atiyah_sequence(g);
        CHECK(seq.dK() == 0);
        CHECK(seq.dF() == 3);
        CHECK(seq.dB() == 0);
    }
    SUBCASE("Borel inside sl2: dims (0, 2, 1)") {
        auto g = catalog_algebroid("borel-sl2");
        auto seq = atiyah_sequence(g);
        CHECK(seq.dK() == 0);
        CHECK(seq.dF() == 2);
        CHECK(seq.dB() == 1);
    }
    SUBCASE("sequence identities on every example") {
        for (const auto& name : catalog_names()) {
            auto g = catalog_algebroid(name);
            auto seq = atiyah_sequence(g);
            CHECK(seq.dK() + seq.dF() == g.m());
            CHECK(seq.dF() + seq.dB() == g.n());
            for (const auto& k : seq.K_basis) CHECK(vec_is_zero(g.rho(k)));
            // pr_F composed with the inclusion recovers rho
            for (int a = 0; a < g.m(); ++a) {
                Vec ra = g.rho(unit(g.m(), a));
                Vec back = mat_apply(seq.F_incl, mat_apply(seq.pr_F, ra));
                CHECK(vec_is_zero(vec_sub(ra, back)));
            }
        }
    }
}

TEST_CASE("default quadruple satisfies every constraint") {
    for (const auto& name : catalog_names()) {
        auto g = catalog_algebroid(name);
        auto seq = atiyah_sequence(g);
        auto q = default_quadruple(g, seq);
        q.require_valid();
        for (std::uint64_t seed : {11u, 22u, 33u}) {
            auto qr = random_quadruple(g, seq, seed);
            qr.require_valid();
        }
    }
    SUBCASE("identity anchor: tau = id and Rtau = 0") {
        InvariantAlgebroid g;
        g.fiber = bracket_sl2();
        g.tangent.bracket = bracket_sl2();
        g.anchor = Mat::identity(3);
        auto q = default_quadruple(g, atiyah_sequence(g));
        CHECK(q.tau == Mat::identity(3));
        CHECK(q.Rtau.is_zero());
    }
    SUBCASE("zero anchor: tau and the forced nablaK part vanish") {
        auto g = catalog_algebroid("sl2-point");
        auto q = default_quadruple(g, atiyah_sequence(g));
        CHECK(q.nablaK.is_zero());
        CHECK(q.Rtau.is_zero());
    }
    SUBCASE("product example: Rtau = 0 and flat default nablaK") {
        auto g = catalog_algebroid("product-sl2-borel");
        auto q = default_quadruple(g, atiyah_sequence(g));
        CHECK(q.Rtau.is_zero());
        CHECK(q.nablaK.is_zero());
    }
}

TEST_CASE("nabla_A values") {
    SUBCASE("kernel argument along j(B) with default nablaK") {
        auto g = catalog_algebroid("product-sl2-borel");
        auto q = default_quadruple(g, atiyah_sequence(g));
        Vec jb(g.n());
        for (int i = 0; i < g.n(); ++i) jb[i] = q.j.at(i, 0);
        for (int l = 0; l < q.seq.dK(); ++l) {
            Vec a = mat_apply(q.seq.K_incl, unit(q.seq.dK(), l));
            CHECK(vec_is_zero(nabla_A(q, jb, a)));
        }
    }
    SUBCASE("frozen Borel values") {
        auto g = catalog_algebroid("borel-sl2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        // nablaA_h g1 = g1, nablaA_e g0 = -g1, nablaA_f g1 = -g0
        CHECK(nabla_A(q, unit(3, 0), unit(2, 1)) == unit(2, 1));
        CHECK(nabla_A(q, unit(3, 1), unit(2, 0)) == vec_scale(-1, unit(2, 1)));
        CHECK(nabla_A(q, unit(3, 2), unit(2, 1)) == vec_scale(-1, unit(2, 0)));
    }
    SUBCASE("three-term decomposition on a random quadruple") {
        auto g = catalog_algebroid("mixed-borel-semidirect");
        auto seq = atiyah_sequence(g);
        auto q = random_quadruple(g, seq, 5);
        for (int i = 0; i < g.n(); ++i)
            for (int a = 0; a < g.m(); ++a) {
                Vec u = unit(g.n(), i), av = unit(g.m(), a);
                Vec t1 = mat_apply(seq.K_incl, q.nablaK.apply(u, q.pr_K(av)));
                Vec aF = mat_apply(seq.pr_F, g.rho(av));
                Vec t2 = mat_apply(q.tau, q.nablaF.apply(u, aF));
                Vec t3 = mat_apply(seq.K_incl, q.Rtau.apply(q.pr_F(u), aF));
                CHECK(nabla_A(q, u, av) == vec_add(vec_add(t1, t2), t3));
            }
    }
}

TEST_CASE("basic connection") {
    SUBCASE("zero anchor reduces to the bracket") {
        auto g = catalog_algebroid("heis3-point");
        auto q = default_quadruple(g, atiyah_sequence(g));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Vec lhs = basic_connection_g(q, unit(3, a), unit(3, b));
                CHECK(lhs == g.fiber.apply(unit(3, a), unit(3, b)));
            }
    }
    SUBCASE("special-connection identities on Borel and the mixed example") {
        for (const char* name : {"borel-sl2", "mixed-borel-semidirect", "product-sl2-borel"}) {
            auto g = catalog_algebroid(name);
            auto seq = atiyah_sequence(g);
            for (std::uint64_t seed : {0u, 7u}) {
                auto q = seed == 0 ? default_quadruple(g, seq) : random_quadruple(g, seq, seed);
                for (int a = 0; a < g.m(); ++a)
                    for (int i = 0; i < g.n(); ++i) {
                        Vec av = unit(g.m(), a), u = unit(g.n(), i);
                        Vec lhs = basic_connection_t(q, av, u);
                        // nablaF_{rho a} u_F + j(Bott_{rho a} u_B)
                        Vec ra = g.rho(av);
                        Vec uF = q.pr_F(u), uB = q.pr_B(u);
                        Vec f_part = mat_apply(seq.F_incl, q.nablaF.apply(ra, uF));
                        Vec ju(g.n());
                        ju = mat_apply(q.j, uB);
                        Vec bott = q.pr_B(g.tangent.bracket.apply(ra, ju));
                        Vec rhs = vec_add(f_part, mat_apply(q.j, bott));
                        CHECK(lhs == rhs);
                        // fiber side: [a, a'_K] + tau(nablaF_{rho a} rho a')
                        for (int a2 = 0; a2 < g.m(); ++a2) {
                            Vec a2v = unit(g.m(), a2);
                            Vec lhs2 = basic_connection_g(q, av, a2v);
                            Vec k2 = mat_apply(seq.K_incl, q.pr_K(a2v));
                            Vec term1 = g.fiber.apply(av, k2);
                            Vec ra2 = mat_apply(seq.pr_F, g.rho(a2v));
                            Vec term2 = mat_apply(q.tau, q.nablaF.apply(ra, ra2));
                            CHECK(lhs2 == vec_add(term1, term2));
                        }
                    }
            }
        }
    }
    SUBCASE("abelian data with defaults gives zero") {
        auto g = catalog_algebroid("abelian2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        for (int a = 0; a < 2; ++a) {
            CHECK(vec_is_zero(basic_connection_t(q, unit(2, a), unit(1, 0))));
            for (int b = 0; b < 2; ++b)
                CHECK(vec_is_zero(basic_connection_g(q, unit(2, a), unit(2, b))));
        }
    }
}

TEST_CASE("basic curvature") {
    SUBCASE("abelian with zero connections vanishes") {
        auto g = catalog_algebroid("abelian2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(vec_is_zero(basic_curvature_full(q, unit(2, a), unit(2, b), unit(1, 0))));
    }
    SUBCASE("zero anchor reduces to the three-term compatibility tensor") {
        InvariantAlgebroid g;
        g.fiber = bracket_heis3();
        g.tangent.bracket = bracket_abelian(1);
        g.anchor = Mat(1, 3);
        auto seq = atiyah_sequence(g);
        auto q = random_quadruple(g, seq, 3);
        Vec u = unit(1, 0);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                Vec xv = unit(3, x), yv = unit(3, y);
                Vec lhs = basic_curvature(q, xv, yv, u);
                // nablaK_u [x,y] - [nablaK_u x, y] - [x, nablaK_u y], K-coords
                Vec xk = q.pr_K(xv), yk = q.pr_K(yv);
                Vec t1 = q.nablaK.apply(u, q.pr_K(g.fiber.apply(xv, yv)));
                Vec nx = mat_apply(seq.K_incl, q.nablaK.apply(u, xk));
                Vec ny = mat_apply(seq.K_incl, q.nablaK.apply(u, yk));
                Vec t2 = q.pr_K(g.fiber.apply(nx, yv));
                Vec t3 = q.pr_K(g.fiber.apply(xv, ny));
                CHECK(lhs == vec_sub(vec_sub(t1, t2), t3));
            }
    }
    SUBCASE("eight-term identity on j(B)-directions") {
        for (const char* name : {"mixed-borel-semidirect", "product-sl2-borel"}) {
            auto g = catalog_algebroid(name);
            auto seq = atiyah_sequence(g);
            for (std::uint64_t seed : {0u, 13u}) {
                auto q = seed == 0 ? default_quadruple(g, seq) : random_quadruple(g, seq, seed);
                for (int bidx = 0; bidx < seq.dB(); ++bidx) {
                    Vec jb(g.n());
                    for (int i = 0; i < g.n(); ++i) jb[i] = q.j.at(i, bidx);
                    for (int a = 0; a < g.m(); ++a)
                        for (int a2 = 0; a2 < g.m(); ++a2) {
                            Vec av = unit(g.m(), a), a2v = unit(g.m(), a2);
                            Vec lhs = basic_curvature(q, av, a2v, jb);
                            Vec aK = q.pr_K(av), a2K = q.pr_K(a2v);
                            Vec aKg = mat_apply(seq.K_incl, aK);
                            Vec a2Kg = mat_apply(seq.K_incl, a2K);
                            Vec ra = g.rho(av), ra2 = g.rho(a2v);
                            // bracket terms
                            Vec t1 = q.nablaK.apply(jb, q.pr_K(g.fiber.apply(aKg, a2Kg)));
                            Vec t2 = q.pr_K(
                                g.fiber.apply(mat_apply(seq.K_incl, q.nablaK.apply(jb, aK)), a2Kg));
                            Vec t3 = q.pr_K(
                                g.fiber.apply(aKg, mat_apply(seq.K_incl, q.nablaK.apply(jb, a2K))));
                            // curvature terms
                            Vec t4 = curv_nablaK(q, ra, jb, a2K);
                            Vec t5 = curv_nablaK(q, ra2, jb, aK);
                            // splitting-curvature terms
                            Vec raF = mat_apply(seq.pr_F, ra), ra2F = mat_apply(seq.pr_F, ra2);
                            Vec t6 = q.nablaK.apply(jb, q.Rtau.apply(raF, ra2F));
                            Vec t7 = q.Rtau.apply(q.pr_F(g.tangent.bracket.apply(jb, ra)), ra2F);
                            Vec t8 = q.Rtau.apply(raF, q.pr_F(g.tangent.bracket.apply(jb, ra2)));
                            Vec rhs = vec_sub(vec_sub(t1, t2), t3);
                            rhs = vec_add(vec_sub(rhs, t4), t5);
                            rhs = vec_sub(vec_sub(vec_add(rhs, t6), t7), t8);
                            CHECK(lhs == rhs);
                        }
                }
            }
        }
    }
    SUBCASE("F-direction values equal the tau-lifted nablaF curvature") {
        auto g = catalog_algebroid("borel-sl2");
        auto seq = atiyah_sequence(g);
        auto q = default_quadruple(g, seq);
        for (int r = 0; r < seq.dF(); ++r)
            for (int a = 0; a < g.m(); ++a)
                for (int a2 = 0; a2 < g.m(); ++a2) {
                    Vec uF = seq.F_basis[r];
                    Vec av = unit(g.m(), a), a2v = unit(g.m(), a2);
                    Vec lhs = basic_curvature_full(q, av, a2v, uF);
                    Vec ra = mat_apply(seq.pr_F, g.rho(av));
                    Vec ra2 = mat_apply(seq.pr_F, g.rho(a2v));
                    Vec rf = mat_apply(seq.F_incl, ra);
                    Vec rf2 = mat_apply(seq.F_incl, ra2);
                    Vec uFc = mat_apply(seq.pr_F, uF);
                    Vec c1 = q.nablaF.apply(rf, q.nablaF.apply(rf2, uFc));
                    Vec c2 = q.nablaF.apply(rf2, q.nablaF.apply(rf, uFc));
                    Vec c3 = q.nablaF.apply(g.tangent.bracket.apply(rf, rf2), uFc);
                    Vec curv = vec_sub(vec_sub(c1, c2), c3);
                    CHECK(lhs == vec_scale(-1, mat_apply(q.tau, curv)));
                }
    }
    SUBCASE("antisymmetry in the fiber arguments") {
        auto g = catalog_algebroid("mixed-borel-semidirect");
        auto seq = atiyah_sequence(g);
        auto q = random_quadruple(g, seq, 17);
        for (int a = 0; a < g.m(); ++a)
            for (int a2 = 0; a2 < g.m(); ++a2)
                for (int i = 0; i < g.n(); ++i) {
                    Vec lhs = basic_curvature_full(q, unit(g.m(), a), unit(g.m(), a2),
                                                   unit(g.n(), i));
                    Vec rhs = basic_curvature_full(q, unit(g.m(), a2), unit(g.m(), a),
                                                   unit(g.n(), i));
                    CHECK(lhs == vec_scale(-1, rhs));
                }
    }
}

TEST_CASE("omega tensor") {
    SUBCASE("product with flat defaults vanishes") {
        auto g = catalog_algebroid("product-sl2-borel");
        auto q = default_quadruple(g, atiyah_sequence(g));
        CHECK(omega_tensor(q).is_zero());
    }
    SUBCASE("zero anchor with zero nablaK vanishes") {
        InvariantAlgebroid g;
        g.fiber = bracket_heis3();
        g.tangent.bracket = bracket_abelian(1);
        g.anchor = Mat(1, 3);
        auto q = default_quadruple(g, atiyah_sequence(g));
        CHECK(omega_tensor(q).is_zero());
    }
    SUBCASE("heisenberg kernel with a nonzero B-direction connection") {
        InvariantAlgebroid g;
        g.fiber = bracket_heis3();
        g.tangent.bracket = bracket_abelian(1);
        g.anchor = Mat(1, 3);
        auto seq = atiyah_sequence(g);
        auto q = random_quadruple(g, seq, 41);
        MixedForm omega = omega_tensor(q);
        CHECK(!omega.is_zero());
        Vec jb(1);
        jb[0] = q.j.at(0, 0);
        for (int a = 0; a < 3; ++a)
            for (int a2 = 0; a2 < 3; ++a2) {
                Vec want = vec_scale(-1, basic_curvature(q, unit(3, a), unit(3, a2), jb));
                for (int k = 0; k < 3; ++k) CHECK(omega.at({a, a2, k, 0}) == want[k]);
            }
    }
    SUBCASE("mixed example has a nonzero omega") {
        auto g = catalog_algebroid("mixed-borel-semidirect");
        auto q = default_quadruple(g, atiyah_sequence(g));
        CHECK(!omega_tensor(q).is_zero());
    }
}
