#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcove/actions.hpp"
#include "alcove/graded.hpp"

namespace alcove {

// Materialized finite cochain complex: labeled bases per total degree and the
// differential as one matrix per degree.
struct CochainComplex {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, Mat> d;

    int dim(int k) const {
        auto it = labels.find(k);
        return it == labels.end() ? 0 : int(it->second.size());
    }
    int min_degree() const { return labels.empty() ? 0 : labels.begin()->first; }
    int max_degree() const { return labels.empty() ? 0 : labels.rbegin()->first; }
    // d[k] padded with a zero matrix of the right shape when absent.
    Mat diff(int k) const;
    void check_d2(const std::string& what) const;
};

int cohomology_dim(const CochainComplex& c, int k);
std::vector<Vec> cohomology_representatives(const CochainComplex& c, int k);
bool is_cocycle(const CochainComplex& c, int k, const Vec& z);
// Solves d(eta) = z for closed z; nullopt when z is not a coboundary.
std::optional<Vec> coboundary_preimage(const CochainComplex& c, int k, const Vec& z);

// Representation-up-to-homotopy presentation: strands with connection-type
// actions, odd fiber blocks (anchor-type) and two-form blocks
// (curvature-type). Materializes to Omega_A(strands) with
// D = Koszul(actions) + blocks, blocks applied with the sign (-1)^p past the
// form legs.
struct Strand {
    std::string name;
    int internal_degree = 0;
    int dim = 0;
};

struct FiberBlock {
    int from = 0, to = 0;  // strand indices; internal degree rises by one
    Mat mat;
};

struct TwoFormBlock {
    int from = 0, to = 0;  // internal degree drops by one
    std::vector<Mat> mats;  // indexed alpha * m + beta, antisymmetric pair
};

struct StrandRep {
    const InvariantAlgebroid* g = nullptr;
    std::vector<Strand> strands;
    std::vector<std::vector<Mat>> act;  // [strand][g-direction]
    std::vector<FiberBlock> fiber_blocks;
    std::vector<TwoFormBlock> two_blocks;

    int strand_index(const std::string& name) const;
};

CochainComplex materialize(const StrandRep& rep);

// Basis layout used by materialize: per total degree, entries in order.
struct StrandBasisEntry {
    int strand;
    std::vector<int> legs;  // ascending subset of g-directions
    int fiber;
};
std::map<int, std::vector<StrandBasisEntry>> strand_basis(const StrandRep& rep);

// Dual presentation: actions -A^T, fiber blocks +B^T, two-form blocks -N^T.
StrandRep dualize(const StrandRep& rep);

// Fiber tensor product over Omega_A; Koszul signs on the second factor's
// blocks from the first factor's internal degrees.
StrandRep tensor(const StrandRep& x, const StrandRep& y);

// Plain flat module as a one-strand presentation.
StrandRep module_rep(const InvariantAlgebroid& g, const std::string& name, int internal_degree,
                     std::vector<Mat> action);

// Chevalley-Eilenberg complex of a canonical-value module.
CochainComplex ce_complex(const ActionCtx& ctx, const ValueSpace& w);

// Adjoint representation on g[1] (+) t induced by a quadruple.
StrandRep adjoint_rep_big(const ConnectionQuadruple& q);

// Transferred representation on K[1] (+) B: d_CE minus the Omega block.
StrandRep adjoint_rep_small(const ConnectionQuadruple& q);

// Complex of Lambda(E*)-legged mixed forms over the shape families reachable
// from the seeds, within [min_degree, max_degree]; D = d_CE - omega_hat.
class ShapeComplex {
  public:
    ShapeComplex(const ActionCtx& ctx, MixedForm omega, std::vector<Shape> seed_shapes,
                 int min_degree, int max_degree);

    const CochainComplex& complex() const { return cx_; }
    int min_degree() const { return min_; }
    int max_degree() const { return max_; }

    Vec flatten(const FormSum& f, int degree) const;
    FormSum unflatten(const Vec& v, int degree) const;
    FormSum apply_d(const FormSum& f) const;

    bool is_closed(const FormSum& f, int degree) const;
    std::optional<FormSum> coboundary_preimage_form(const FormSum& z, int degree) const;

  private:
    struct Element {
        Shape shape;
        std::vector<int> idx;  // sorted leg tuples then value multi-index
    };
    ActionCtx ctx_;
    MixedForm omega_;
    bool has_omega_ = false;
    int min_ = 0, max_ = 0;
    std::map<int, std::vector<Element>> elems_;
    CochainComplex cx_;

    MixedForm element_form(const Element& e) const;
};

}  // namespace alcove
