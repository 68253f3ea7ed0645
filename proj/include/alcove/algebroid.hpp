#pragma once

#include <array>
#include <string>
#include <vector>

#include "alcove/matrix.hpp"
#include "alcove/mixedform.hpp"

namespace alcove {

// Structure constants of a finite Lie algebra: bracket(i,j) is the
// coordinate vector of [x_i, x_j].
class Bracket {
  public:
    Bracket() = default;
    explicit Bracket(int n) : n_(n), c_(size_t(n) * n * n) {}

    int dim() const { return n_; }
    Rational& at(int i, int j, int k) { return c_[(size_t(i) * n_ + j) * n_ + k]; }
    const Rational& at(int i, int j, int k) const { return c_[(size_t(i) * n_ + j) * n_ + k]; }

    Vec apply(const Vec& x, const Vec& y) const;  // [x, y]
    bool is_antisymmetric() const;
    // Returns an offending triple when the Jacobi identity fails.
    bool jacobi_holds(std::array<int, 3>* witness = nullptr) const;

  private:
    int n_ = 0;
    std::vector<Rational> c_;
};

// Stand-in for the ambient tangent Lie algebra.
struct TangentModel {
    Bracket bracket;  // dimension n
    int dim() const { return bracket.dim(); }
};

struct ValidationIssue {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Lie algebra g with an anchor morphism rho: g -> t.
struct InvariantAlgebroid {
    std::string name;
    Bracket fiber;    // dimension m
    TangentModel tangent;
    Mat anchor;       // n x m

    int m() const { return fiber.dim(); }
    int n() const { return tangent.dim(); }
    Vec rho(const Vec& a) const { return mat_apply(anchor, a); }

    ValidationReport validate() const;
    void require_valid() const;
};

// Kernel / image / quotient data of the anchor with projections. K-, F- and
// B-valued quantities are kept in these bases; pr_K is the projection along
// tau(F) for the pivot-based tau, pr_F the projection along j(B).
struct AtiyahSequenceData {
    std::vector<Vec> K_basis;  // vectors in g-coordinates
    std::vector<Vec> F_basis;  // vectors in t-coordinates (anchor images of pivot columns)
    std::vector<Vec> B_basis;  // representatives in t-coordinates
    std::vector<int> pivot_columns;  // g-columns whose images span F
    Mat pr_K;  // dK x m
    Mat pr_F;  // dF x n
    Mat pr_B;  // dB x n
    Mat K_incl;  // m x dK
    Mat F_incl;  // n x dF
    Mat j0;      // n x dB, coordinate section

    int dK() const { return int(K_basis.size()); }
    int dF() const { return int(F_basis.size()); }
    int dB() const { return int(B_basis.size()); }
    Dims dims(int m) const { return Dims{m, dB(), dK()}; }
};

AtiyahSequenceData atiyah_sequence(const InvariantAlgebroid& g);

}  // namespace alcove
