#pragma once

#include "alcove/complex.hpp"

namespace alcove {

// Deformation-retract datum between two materialized complexes, all maps as
// per-degree matrices (zero-padded when absent).
struct Contraction {
    CochainComplex big, small;
    std::map<int, Mat> phi;  // big^k -> small^k
    std::map<int, Mat> psi;  // small^k -> big^k
    std::map<int, Mat> h;    // big^k -> big^{k-1}

    Mat phi_at(int k) const;
    Mat psi_at(int k) const;
    Mat h_at(int k) const;
    int min_degree() const;
    int max_degree() const;
};

struct ContractionReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Exact matrix checks of every axiom: chain maps, phi.psi = id,
// psi.phi = id + [d, h], and the side conditions h^2 = phi.h = h.psi = 0.
ContractionReport verify_contraction(const Contraction& c);

Contraction identity_contraction(const CochainComplex& c);

// Graded matrix dual: degrees negate, phi' = psi^T, psi' = phi^T,
// h' = -(-1)^k h^T, d' = (-1)^k d^T.
Contraction dualize_contraction(const Contraction& c);

// The canonical degreewise sign identification under which the double dual
// equals the original contraction.
bool equal_up_to_double_dual(const Contraction& a, const Contraction& b);

// Tensor-product layout bookkeeping for (A (x) B)^k = sum A^i (x) B^j.
struct TensorLayout {
    struct Block {
        int left_degree, right_degree, offset, left_dim, right_dim;
    };
    std::map<int, std::vector<Block>> blocks;
    int dim(int k) const;
};

CochainComplex tensor_complex(const CochainComplex& a, const CochainComplex& b,
                              TensorLayout* layout);

// Standard tensor of contractions: Phi = phi (x) phi, Psi = psi (x) psi,
// H = h (x) id + (psi.phi) (x) h with the Koszul sign on the second factor.
Contraction tensor_contraction(const Contraction& a, const Contraction& b);

struct Perturbation {
    std::map<int, Mat> rho;  // degree +1 maps on the big complex
    Mat at(const CochainComplex& big, int k) const;
};

// Homological perturbation lemma. Requires (d + rho)^2 = 0 and nilpotency of
// h.rho within max_iter; throws otherwise.
Contraction apply_perturbation(const Contraction& c, const Perturbation& rho, int max_iter);

// Chain transfer of a closed element along phi.
Vec transfer_cocycle(const Contraction& c, int degree, const Vec& z);

// The adjoint contraction: from the big adjoint complex (full differential)
// to K[1] (+) B with differential d_CE - Omega, built by perturbing the
// anchor-only contraction. The construction asserts the anti-commutation of h
// with the perturbation, the collapse of the perturbation series, and that
// the transferred small differential equals the independently assembled one.
struct AdjointContraction {
    Contraction con;
    StrandRep big_rep, small_rep;
    // Fiber blocks of the three maps, kept for bundle-level duals.
    std::vector<std::vector<Mat>> phi_blocks, psi_blocks, h_blocks;
};

AdjointContraction build_adjoint_contraction(const ConnectionQuadruple& q);

// Bundle-level dual: the contraction on the dual presentations with the
// transposed fiber maps, Omega_A-linear over the same legs. This is the dual
// of dg vector bundles, unlike dualize_contraction which dualizes the total
// complexes.
AdjointContraction dualize_bundle_contraction(const AdjointContraction& adj);

// Per-degree matrices of an Omega_A-linear fiber map between
// materializations over the same algebroid. blocks[t][s] maps strand s of
// src to strand t of dst (empty matrices mean zero). Odd fiber degrees act
// with the sign (-1)^p past the form legs.
std::map<int, Mat> fiber_map_matrices(const StrandRep& src, const StrandRep& dst,
                                      const std::vector<std::vector<Mat>>& blocks,
                                      int fiber_degree);

}  // namespace alcove
