#pragma once

#include "alcove/mixedform.hpp"

namespace alcove {

// Form with values in End(K[1] + B), kept as four Hom-valued blocks indexed
// [out][in] over {K, B}. Entries multiply by wedge-composition, so powers,
// supertrace and Berezinian work blockwise.
class BlockForm {
  public:
    BlockForm() = default;
    explicit BlockForm(const Dims& d);

    static BlockForm identity(const Dims& d);

    const Dims& dims() const { return dims_; }
    FormSum& block(Prim out, Prim in) { return blk_[slot(out, in)]; }
    const FormSum& block(Prim out, Prim in) const { return blk_[slot(out, in)]; }

    BlockForm operator+(const BlockForm& o) const;
    BlockForm operator-(const BlockForm& o) const;
    BlockForm operator*(const Rational& c) const;
    BlockForm mul(const BlockForm& o) const;  // blockwise wedge-composition
    bool is_zero() const;

    // Drops terms with p + s beyond the bound in every block.
    BlockForm truncate(int max_leg_degree) const;

  private:
    static int slot(Prim out, Prim in) {
        return (out == Prim::K ? 0 : 2) + (in == Prim::K ? 0 : 1);
    }
    Dims dims_;
    std::array<FormSum, 4> blk_;
};

// str(T) = tr(T_BB) - tr(T_KK).
FormSum supertrace(const BlockForm& t);

FormSum truncate_legs(const FormSum& f, int max_leg_degree);

// Scalar-valued exp/sum machinery, truncated at p + s <= max_leg_degree.
FormSum exp_scalar(const FormSum& s, const Dims& d, int max_leg_degree);

// log(t) for t = identity + n with n of leg count >= 1. Throws if the
// degree-zero part of t is not the identity.
BlockForm log_unipotent(const BlockForm& t, int max_leg_degree);

// Ber(t) = exp(str(log t)), truncated. For block-triangular t this equals
// det(BB-block) / det(KK-block).
FormSum berezinian_unipotent(const BlockForm& t, int max_leg_degree);

// det(1 + n) = exp(tr(log(1 + n))) for an End-valued one_plus_n whose
// degree-zero part is the identity.
FormSum det_unipotent(const FormSum& one_plus_n, const Dims& d, int max_leg_degree);

// Identity element of an End-type value space as a degree-zero form.
MixedForm end_identity(const Dims& d, const ValueSpace& endv);

}  // namespace alcove
