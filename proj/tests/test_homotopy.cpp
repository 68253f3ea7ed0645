#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alcove/catalog.hpp"
#include "alcove/contraction.hpp"

using namespace alcove;

namespace {

// Contractible-plus-retract toy: degrees 0..2, core (a0 -> b1, c1 -> d2)
// contracted onto the two-dimensional retract (e0, g1).
Contraction toy_contraction() {
    Contraction c;
    c.big.labels[0] = {"a0", "e0"};
    c.big.labels[1] = {"b1", "c1", "g1"};
    c.big.labels[2] = {"d2"};
    Mat d0(3, 2);
    d0.at(0, 0) = 1;  // a0 -> b1
    Mat d1(1, 3);
    d1.at(0, 1) = 1;  // c1 -> d2
    c.big.d[0] = d0;
    c.big.d[1] = d1;
    c.big.d[2] = Mat(0, 1);

    c.small.labels[0] = {"t0"};
    c.small.labels[1] = {"t1"};
    c.small.d[0] = Mat(1, 1);
    c.small.d[1] = Mat(0, 1);

    Mat phi0(1, 2);
    phi0.at(0, 1) = 1;  // e0 -> t0
    Mat phi1(1, 3);
    phi1.at(0, 2) = 1;  // g1 -> t1
    c.phi[0] = phi0;
    c.phi[1] = phi1;
    c.phi[2] = Mat(0, 1);
    Mat psi0(2, 1);
    psi0.at(1, 0) = 1;
    Mat psi1(3, 1);
    psi1.at(2, 0) = 1;
    c.psi[0] = psi0;
    c.psi[1] = psi1;
    Mat h1(2, 3);
    h1.at(0, 0) = -1;  // b1 -> -a0
    Mat h2(3, 1);
    h2.at(1, 0) = -1;  // d2 -> -c1
    c.h[1] = h1;
    c.h[2] = h2;
    return c;
}

Perturbation toy_perturbation(const Contraction& c) {
    Perturbation p;
    Mat r0(3, 2);
    r0.at(1, 0) = 1;  // a0 -> c1
    r0.at(2, 1) = 1;  // e0 -> g1
    r0.at(0, 1) = 1;  // e0 -> b1
    r0.at(1, 1) = 1;  // e0 -> c1
    Mat r1(1, 3);
    r1.at(0, 0) = -1;  // b1 -> -d2
    p.rho[0] = r0;
    p.rho[1] = r1;
    (void)c;
    return p;
}

}  // namespace

TEST_CASE("verify_contraction") {
    SUBCASE("identity contraction passes") {
        auto g = catalog_algebroid("borel-sl2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        auto cx = materialize(adjoint_rep_small(q));
        CHECK(verify_contraction(identity_contraction(cx)).ok());
    }
    SUBCASE("toy contraction passes") { CHECK(verify_contraction(toy_contraction()).ok()); }
    SUBCASE("injected h^2 defect is caught at the side conditions") {
        Contraction c = toy_contraction();
        c.h[2].at(0, 0) = 1;  // d2 -> a0 breaks h.h = 0
        auto rep = verify_contraction(c);
        REQUIRE(!rep.ok());
        bool found = false;
        for (const auto& f : rep.failures)
            if (f.find("h.h != 0") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("dualize_contraction") {
    SUBCASE("dual of the identity is the identity") {
        auto g = catalog_algebroid("abelian2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        auto cx = materialize(adjoint_rep_small(q));
        Contraction id = identity_contraction(cx);
        Contraction dual = dualize_contraction(id);
        CHECK(verify_contraction(dual).ok());
        for (int k = dual.min_degree(); k <= dual.max_degree(); ++k)
            CHECK(dual.phi_at(k) == Mat::identity(dual.big.dim(k)));
    }
    SUBCASE("dual contraction satisfies the axioms; double dual is canonical") {
        Contraction c = toy_contraction();
        Contraction dual = dualize_contraction(c);
        CHECK(verify_contraction(dual).ok());
        Contraction dd = dualize_contraction(dual);
        CHECK(equal_up_to_double_dual(dd, c));
    }
    SUBCASE("bundle dual of the adjoint contraction retracts onto the dual modules") {
        auto g = catalog_algebroid("mixed-borel-semidirect");
        auto q = default_quadruple(g, atiyah_sequence(g));
        auto adj = build_adjoint_contraction(q);
        // matrix-level dual of the total complexes also satisfies the axioms
        CHECK(verify_contraction(dualize_contraction(adj.con)).ok());
        // bundle-level dual: small side carries d_CE of the dual modules
        // plus the transposed omega block (verified against the dual
        // presentation, whose displayed block form is checked elsewhere).
        auto dual = dualize_bundle_contraction(adj);
        CHECK(verify_contraction(dual.con).ok());
        auto strand_dual = materialize(dualize(adj.small_rep));
        for (int k = strand_dual.min_degree(); k <= strand_dual.max_degree(); ++k)
            CHECK(dual.con.small.diff(k) == strand_dual.diff(k));
        // double bundle dual restores the original contraction on the nose
        auto dd = dualize_bundle_contraction(dual);
        for (int k = adj.con.min_degree(); k <= adj.con.max_degree(); ++k) {
            CHECK(dd.con.phi_at(k) == adj.con.phi_at(k));
            CHECK(dd.con.psi_at(k) == adj.con.psi_at(k));
            CHECK(dd.con.h_at(k) == adj.con.h_at(k));
            CHECK(dd.con.big.diff(k) == adj.con.big.diff(k));
        }
    }
}

TEST_CASE("tensor_contraction") {
    SUBCASE("identity (x) identity is the identity") {
        auto g = catalog_algebroid("abelian2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        auto cx = materialize(adjoint_rep_small(q));
        Contraction id = identity_contraction(cx);
        Contraction t = tensor_contraction(id, id);
        CHECK(verify_contraction(t).ok());
        for (int k = t.min_degree(); k <= t.max_degree(); ++k) {
            CHECK(t.phi_at(k) == Mat::identity(t.big.dim(k)));
            CHECK(t.h_at(k).is_zero());
        }
    }
    SUBCASE("c (x) identity has h-part h (x) id") {
        Contraction c = toy_contraction();
        CochainComplex pt;
        pt.labels[0] = {"*"};
        pt.d[0] = Mat(0, 1);
        Contraction id = identity_contraction(pt);
        Contraction t = tensor_contraction(c, id);
        CHECK(verify_contraction(t).ok());
        for (int k = 0; k <= 2; ++k) CHECK(t.h_at(k) == c.h_at(k));
    }
    SUBCASE("adjoint self-tensor passes the axioms on the Borel example") {
        auto g = catalog_algebroid("borel-sl2");
        auto q = default_quadruple(g, atiyah_sequence(g));
        auto adj = build_adjoint_contraction(q);
        Contraction t = tensor_contraction(dualize_contraction(adj.con), adj.con);
        CHECK(verify_contraction(t).ok());
    }
}

TEST_CASE("apply_perturbation") {
    SUBCASE("zero perturbation leaves the contraction unchanged") {
        Contraction c = toy_contraction();
        Perturbation zero;
        Contraction out = apply_perturbation(c, zero, 10);
        CHECK(verify_contraction(out).ok());
        for (int k = 0; k <= 2; ++k) {
            CHECK(out.phi_at(k) == c.phi_at(k));
            CHECK(out.psi_at(k) == c.psi_at(k));
            CHECK(out.h_at(k) == c.h_at(k));
            CHECK(out.small.diff(k) == c.small.diff(k));
        }
    }
    SUBCASE("rank-two toy matches the hand-expanded two-term series") {
        Contraction c = toy_contraction();
        Perturbation rho = toy_perturbation(c);
        Contraction out = apply_perturbation(c, rho, 10);
        CHECK(verify_contraction(out).ok());
        // hand expansion: phi and h collapse, psi gains one correction term,
        // the small differential becomes t0 -> t1.
        CHECK(out.phi_at(0) == c.phi_at(0));
        CHECK(out.phi_at(1) == c.phi_at(1));
        CHECK(out.h_at(1) == c.h_at(1));
        CHECK(out.h_at(2) == c.h_at(2));
        Mat psi0(2, 1);
        psi0.at(0, 0) = -1;  // -a0
        psi0.at(1, 0) = 1;   // +e0
        CHECK(out.psi_at(0) == psi0);
        CHECK(out.psi_at(1) == c.psi_at(1));
        Mat theta(1, 1);
        theta.at(0, 0) = 1;
        CHECK(out.small.diff(0) == theta);
        CHECK(out.small.diff(1).is_zero());
    }
    SUBCASE("non-nilpotent h.rho is rejected") {
        // a two-torus-like loop: d = 0, h with h rho not nilpotent
        Contraction c;
        c.big.labels[0] = {"x"};
        c.big.labels[1] = {"y"};
        c.big.d[0] = Mat(1, 1);
        c.big.d[1] = Mat(0, 1);
        c.small = c.big;
        c.phi[0] = Mat::identity(1);
        c.phi[1] = Mat::identity(1);
        c.psi[0] = Mat::identity(1);
        c.psi[1] = Mat::identity(1);
        // psi.phi = id and h = 0 is a valid contraction; inject h != 0
        // with rho so that h.rho has eigenvalue 1.
        Mat h1(1, 1);
        h1.at(0, 0) = 1;
        c.h[1] = h1;  // breaks side conditions but exercises the guard
        Perturbation rho;
        Mat r0(1, 1);
        r0.at(0, 0) = 1;
        rho.rho[0] = r0;
        // (d + rho)^2 = 0 flows through degree parity here
        CHECK_THROWS(apply_perturbation(c, rho, 8));
    }
}

TEST_CASE("build_adjoint_contraction on the whole catalog") {
    for (const auto& name : catalog_names()) {
        auto g = catalog_algebroid(name);
        auto seq = atiyah_sequence(g);
        for (std::uint64_t seed : {0u, 37u}) {
            auto q = seed == 0 ? default_quadruple(g, seq) : random_quadruple(g, seq, seed);
            auto adj = build_adjoint_contraction(q);
            CHECK(verify_contraction(adj.con).ok());
        }
    }
    SUBCASE("direct product: small differential is d_CE exactly") {
        auto g = catalog_algebroid("product-sl2-borel");
        auto q = default_quadruple(g, atiyah_sequence(g));
        REQUIRE(omega_tensor(q).is_zero());
        auto adj = build_adjoint_contraction(q);
        // assemble the omega-free strand complex
        StrandRep pure = adj.small_rep;
        pure.two_blocks.clear();
        auto pure_cx = materialize(pure);
        for (int k = pure_cx.min_degree(); k <= pure_cx.max_degree(); ++k)
            CHECK(adj.con.small.diff(k) == pure_cx.diff(k));
    }
}

TEST_CASE("transfer_cocycle") {
    auto g = catalog_algebroid("mixed-borel-semidirect");
    auto q = default_quadruple(g, atiyah_sequence(g));
    auto adj = build_adjoint_contraction(q);
    const auto& big = adj.con.big;
    SUBCASE("zero transfers to zero") {
        Vec z(big.dim(1));
        CHECK(vec_is_zero(transfer_cocycle(adj.con, 1, z)));
    }
    SUBCASE("coboundaries transfer to coboundaries") {
        RatRng rng(43);
        for (int trial = 0; trial < 4; ++trial) {
            Vec eta(big.dim(0));
            for (auto& x : eta) x = rng.small(2);
            Vec z = mat_apply(big.diff(0), eta);
            Vec out = transfer_cocycle(adj.con, 1, z);
            auto pre = coboundary_preimage(adj.con.small, 1, out);
            CHECK(pre.has_value());
        }
    }
    SUBCASE("closed elements transfer to closed elements") {
        auto kernel = kernel_basis(big.diff(1));
        for (const auto& z : kernel) {
            Vec out = transfer_cocycle(adj.con, 1, z);
            CHECK(is_cocycle(adj.con.small, 1, out));
        }
    }
    SUBCASE("non-closed input is rejected") {
        RatRng rng(47);
        Vec z(big.dim(1));
        for (auto& x : z) x = rng.small(2);
        if (!is_cocycle(big, 1, z)) CHECK_THROWS(transfer_cocycle(adj.con, 1, z));
    }
}
