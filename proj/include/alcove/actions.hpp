#pragma once

#include "alcove/quadruple.hpp"

namespace alcove {

// Canonical flat module actions over an algebroid: K with the restricted
// bracket, B with the Bott action (independent of the chosen section).
// Duals act by minus-transpose; compound values as derivations.
struct ActionCtx {
    const InvariantAlgebroid* g = nullptr;
    AtiyahSequenceData seq;
    Dims dims;
    std::vector<Mat> actK;  // per g-basis direction, dK x dK
    std::vector<Mat> actB;  // per g-basis direction, dB x dB

    const Mat& action(Prim p, int dir) const { return p == Prim::K ? actK[dir] : actB[dir]; }
};

ActionCtx make_action_ctx(const InvariantAlgebroid& g, const AtiyahSequenceData& seq);

// Flatness of both canonical actions, checked on all basis pairs.
void check_flatness(const ActionCtx& ctx);

// Chevalley-Eilenberg differential. Acts on eta/kappa-legs and value factors
// through the module structure, with the standard Koszul formula on g-legs.
MixedForm ce_d(const ActionCtx& ctx, const MixedForm& w);
FormSum ce_d(const ActionCtx& ctx, const FormSum& w);

// Operator induced by the perturbation tensor Omega (a (2,0,0) Hom(B,K[1])
// form): kappa-legs become (theta,theta,eta)-legs, K-dual value factors
// become B-dual factors, B-plain value factors become K-plain factors.
FormSum omega_hat(const ActionCtx& ctx, const MixedForm& omega, const MixedForm& w);
FormSum omega_hat(const ActionCtx& ctx, const MixedForm& omega, const FormSum& w);

// Total differential D = d_CE - omega_hat; omega may be null for pure CE.
FormSum total_d(const ActionCtx& ctx, const MixedForm* omega, const FormSum& w);

}  // namespace alcove
