#pragma once

#include "alcove/contraction.hpp"

namespace alcove {

// Operators on the exterior algebra of g*, basis indexed by bitmasks; the
// monomial of a mask is the ascending product of its generators.
class ExteriorOps {
  public:
    explicit ExteriorOps(int m);

    int gens() const { return m_; }
    int dim() const { return 1 << m_; }

    Mat wedge1(int c) const;              // left multiplication by theta^c
    Mat contract(int a) const;            // odd derivation dual to g_a
    Mat wedge_element(const Vec& x) const;  // left multiplication by x
    // Even derivation with generator values theta^c -> sum gen(c,c') theta^{c'}.
    Mat even_derivation(const Mat& gen) const;

    static int mask_of(const std::vector<int>& subset);
    static std::vector<int> subset_of(int mask);

  private:
    int m_;
};

// CE differential of g with trivial coefficients as an operator on the
// exterior algebra.
Mat ce_operator(const InvariantAlgebroid& g, const ExteriorOps& ext);

// Invariant vector field: vertical operator part on the exterior algebra and
// flat-frame horizontal components (one exterior-algebra vector per
// t-direction).
struct VField {
    Mat vert;
    std::vector<Vec> hor;
    int degree = 0;
};

VField vf_vertical_frame(const ExteriorOps& ext, int a, int n);
VField vf_horizontal_frame(const ExteriorOps& ext, const ConnectionQuadruple& q, int u);
VField vf_homological(const ExteriorOps& ext, const InvariantAlgebroid& g);
VField vf_bracket(const ExteriorOps& ext, const TangentModel& t, const VField& x,
                  const VField& y);

// Frame decomposition of a vector field into big-adjoint-complex coordinates;
// throws if the vertical residue is not a derivation combination (a
// consistency failure of the frame calculus).
std::map<int, Vec> frame_decompose(const ExteriorOps& ext, const ConnectionQuadruple& q,
                                   const StrandRep& big_rep, const VField& x);

// Materialized big adjoint complex with basis lookup and the covariant
// derivative helpers of the pullback connection (nabla^A, nabla^M)
// along frame directions.
struct BigFrame {
    const ConnectionQuadruple* q = nullptr;
    StrandRep rep;
    CochainComplex cx;
    std::map<int, std::vector<StrandBasisEntry>> basis;

    int m = 0, n = 0;
    int fiber_count() const { return m + n; }          // g[1]-fibers then t-fibers
    int fiber_strand(int x) const { return x < m ? 0 : 1; }
    int fiber_index(int x) const { return x < m ? x : x - m; }
    int fiber_degree(int x) const { return x < m ? -1 : 0; }

    int find(int degree, int strand, const std::vector<int>& legs, int fiber) const;

    // nabla^V along t-direction i of a fiber of strand s.
    Vec nabla_fiber(int i, int strand, int fiber) const;

    // nabla_{Y} e for a direction column Y at `dir_degree` and a constant
    // section e (strand/fiber); output at dir_degree + fiber internal degree.
    Vec nabla_along_column(int dir_degree, const Vec& y, int e_strand, int e_fiber) const;

    // nabla_{Frame(x)} w for w a complex element at `degree`.
    Vec nabla_along_frame(int x, int degree, const Vec& w) const;
};

BigFrame make_big_frame(const ConnectionQuadruple& q);

// First-principles Atiyah cocycle entry At(Frame(x), e) of the big tangent
// complex; returns the coordinates at degree fiber_degree(x)+fiber_degree(e)+1.
Vec atiyah_big_entry(const BigFrame& fr, int x, int e);

}  // namespace alcove
