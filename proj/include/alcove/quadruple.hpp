#pragma once

#include "alcove/algebroid.hpp"

namespace alcove {

// Bilinear map t x V -> W as a tensor: at(i, j, k) is the k-th output
// coordinate of the map applied to (direction i, argument j).
class Tensor3 {
  public:
    Tensor3() = default;
    Tensor3(int dirs, int args, int out)
        : d0_(dirs), d1_(args), d2_(out), c_(size_t(dirs) * args * out) {}

    int dirs() const { return d0_; }
    int args() const { return d1_; }
    int out() const { return d2_; }
    Rational& at(int i, int j, int k) { return c_[(size_t(i) * d1_ + j) * d2_ + k]; }
    const Rational& at(int i, int j, int k) const { return c_[(size_t(i) * d1_ + j) * d2_ + k]; }

    Vec apply(const Vec& dir, const Vec& arg) const;
    bool is_zero() const;
    bool operator==(const Tensor3& o) const {
        return d0_ == o.d0_ && d1_ == o.d1_ && d2_ == o.d2_ && c_ == o.c_;
    }

  private:
    int d0_ = 0, d1_ = 0, d2_ = 0;
    std::vector<Rational> c_;
};

// Free components of a quadruple beyond the forced constraints. Defaults are
// all zero; randomization moves every free direction.
struct QuadrupleFreedom {
    Mat tau_shift;       // dK x dF, K-valued correction of the pivot section
    Mat j_shift;         // dF x dB, F-valued correction of the coordinate section
    Tensor3 nablaK_B;    // [dB][dK][dK], nablaK on j(B)-directions
    Tensor3 nablaF_sym;  // [dF][dF][dF], symmetric correction on F x F
    Tensor3 nablaM_BB;   // [dB][dB][n], nablaM_{j(b)} j(b') in t-coordinates

    static QuadrupleFreedom zero(const InvariantAlgebroid& g, const AtiyahSequenceData& seq);
    static QuadrupleFreedom random(const InvariantAlgebroid& g, const AtiyahSequenceData& seq,
                                   std::uint64_t seed);
};

// A splitting pair (tau, j) with the induced connections. All directions are
// ambient t-coordinates; K/F/B-valued data live in the sequence bases.
struct ConnectionQuadruple {
    const InvariantAlgebroid* g = nullptr;
    AtiyahSequenceData seq;

    Mat tau;   // m x dF
    Mat j;     // n x dB
    Mat prK;   // dK x m, projection along tau(F)
    Mat prF;   // dF x n, projection along j(B)

    Tensor3 nablaK;  // [n][dK][dK]
    Tensor3 nablaF;  // [n][dF][dF]
    Tensor3 nablaB;  // [n][dB][dB], derived pr_B . nablaM . j
    Tensor3 nablaA;  // [n][m][m]
    Tensor3 nablaM;  // [n][n][n]
    Tensor3 Rtau;    // [dF][dF][dK]

    Dims dims() const { return seq.dims(g->m()); }

    Vec rho(const Vec& a) const { return g->rho(a); }
    Vec pr_K(const Vec& a) const { return mat_apply(prK, a); }
    Vec pr_F(const Vec& u) const { return mat_apply(prF, u); }
    Vec pr_B(const Vec& u) const { return mat_apply(seq.pr_B, u); }
    Vec tau_of(const Vec& uF) const { return mat_apply(tau, uF); }
    Vec j_of(const Vec& b) const { return mat_apply(j, b); }

    // Spec invariants of the quadruple; throws with the failed identity.
    void require_valid() const;
};

ConnectionQuadruple make_quadruple(const InvariantAlgebroid& g, const AtiyahSequenceData& seq,
                                   const QuadrupleFreedom& free);
ConnectionQuadruple default_quadruple(const InvariantAlgebroid& g, const AtiyahSequenceData& seq);
ConnectionQuadruple random_quadruple(const InvariantAlgebroid& g, const AtiyahSequenceData& seq,
                                     std::uint64_t seed);

// nabla^A_u a as the displayed three-term formula.
Vec nabla_A(const ConnectionQuadruple& q, const Vec& u, const Vec& a);

// Basic connection on the two summands: values in t, resp. g, coordinates.
Vec basic_connection_t(const ConnectionQuadruple& q, const Vec& a, const Vec& u);
Vec basic_connection_g(const ConnectionQuadruple& q, const Vec& a, const Vec& a2);

// Five-term basic curvature of nabla^A, full g-valued form.
Vec basic_curvature_full(const ConnectionQuadruple& q, const Vec& a, const Vec& a2, const Vec& u);

// K-valued basic curvature; throws if the value is not in ker rho.
Vec basic_curvature(const ConnectionQuadruple& q, const Vec& a, const Vec& a2, const Vec& u);

// Omega in Omega_A^2(Hom(B, K[1])): Omega(b)(a, a') = -R^bas(a, a')(j b).
MixedForm omega_tensor(const ConnectionQuadruple& q);

}  // namespace alcove
