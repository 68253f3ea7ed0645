#include "alcove/blockform.hpp"

namespace alcove {

namespace {
constexpr Prim kPrims[2] = {Prim::K, Prim::B};
}

BlockForm::BlockForm(const Dims& d) : dims_(d) {
    for (Prim out : kPrims)
        for (Prim in : kPrims) blk_[slot(out, in)] = FormSum(d);
}

MixedForm end_identity(const Dims& d, const ValueSpace& endv) {
    MixedForm id(d, Shape{0, 0, 0, endv});
    int n = factor_dim(d, endv[0]);
    for (int i = 0; i < n; ++i) id.at({i, i}) = 1;
    return id;
}

BlockForm BlockForm::identity(const Dims& d) {
    BlockForm r(d);
    r.block(Prim::K, Prim::K).add(end_identity(d, vs_end_k()));
    r.block(Prim::B, Prim::B).add(end_identity(d, vs_end_b()));
    return r;
}

BlockForm BlockForm::operator+(const BlockForm& o) const {
    BlockForm r = *this;
    for (int i = 0; i < 4; ++i) r.blk_[i] = r.blk_[i] + o.blk_[i];
    return r;
}

BlockForm BlockForm::operator-(const BlockForm& o) const {
    BlockForm r = *this;
    for (int i = 0; i < 4; ++i) r.blk_[i] = r.blk_[i] - o.blk_[i];
    return r;
}

BlockForm BlockForm::operator*(const Rational& c) const {
    BlockForm r = *this;
    for (int i = 0; i < 4; ++i) r.blk_[i] = r.blk_[i] * c;
    return r;
}

BlockForm BlockForm::mul(const BlockForm& o) const {
    BlockForm r(dims_);
    for (Prim out : kPrims)
        for (Prim in : kPrims)
            for (Prim mid : kPrims)
                r.block(out, in) =
                    r.block(out, in) + wedge(block(out, mid), o.block(mid, in), Pairing::Compose);
    return r;
}

bool BlockForm::is_zero() const {
    for (int i = 0; i < 4; ++i)
        if (!blk_[i].is_zero()) return false;
    return true;
}

FormSum truncate_legs(const FormSum& f, int max_leg_degree) {
    FormSum r(f.dims());
    for (const auto& [sh, term] : f.terms())
        if (sh.p + sh.s <= max_leg_degree) r.add(term);
    return r;
}

BlockForm BlockForm::truncate(int max_leg_degree) const {
    BlockForm r = *this;
    for (int i = 0; i < 4; ++i) r.blk_[i] = truncate_legs(r.blk_[i], max_leg_degree);
    return r;
}

FormSum supertrace(const BlockForm& t) {
    return value_trace(t.block(Prim::B, Prim::B)) - value_trace(t.block(Prim::K, Prim::K));
}

FormSum exp_scalar(const FormSum& s, const Dims& d, int max_leg_degree) {
    for (const auto& [sh, f] : s.terms())
        require(sh.val.empty() && sh.p + sh.a + sh.s > 0, "exp_scalar: needs scalar terms of leg count >= 1");
    MixedForm one(d, Shape{0, 0, 0, vs_scalar()});
    one.coef()[0] = 1;
    FormSum result = FormSum::of(one);
    FormSum power = result;
    int bound = d.g + d.b + max_leg_degree + 1;
    for (int k = 1; k <= bound; ++k) {
        power = truncate_legs(wedge(power, s, Pairing::Tensor), max_leg_degree);
        if (power.is_zero()) break;
        result = result + power * (Rational(1) / factorial(k));
    }
    return result;
}

namespace {

bool degree_zero_is_identity(const BlockForm& t) {
    BlockForm diff = t - BlockForm::identity(t.dims());
    for (Prim out : kPrims)
        for (Prim in : kPrims)
            for (const auto& [sh, f] : diff.block(out, in).terms())
                if (sh.p + sh.a + sh.s == 0) return false;
    return true;
}

}  // namespace

BlockForm log_unipotent(const BlockForm& t, int max_leg_degree) {
    require(degree_zero_is_identity(t), "log_unipotent: degree-zero part is not the identity");
    BlockForm n = (t - BlockForm::identity(t.dims())).truncate(max_leg_degree);
    BlockForm result(t.dims());
    BlockForm power = n;
    int bound = t.dims().g + t.dims().b + max_leg_degree + 1;
    for (int k = 1; k <= bound; ++k) {
        Rational c = Rational((k % 2 == 1) ? 1 : -1) / k;
        result = result + power * c;
        power = power.mul(n).truncate(max_leg_degree);
        if (power.is_zero()) break;
    }
    return result;
}

FormSum berezinian_unipotent(const BlockForm& t, int max_leg_degree) {
    FormSum s = truncate_legs(supertrace(log_unipotent(t, max_leg_degree)), max_leg_degree);
    return exp_scalar(s, t.dims(), max_leg_degree);
}

FormSum det_unipotent(const FormSum& one_plus_n, const Dims& d, int max_leg_degree) {
    require(!one_plus_n.is_zero(), "det_unipotent: zero input");
    const ValueSpace endv = one_plus_n.terms().begin()->second.shape().val;
    require(endv.size() == 2 && endv[0].prim == endv[1].prim, "det_unipotent: not End-valued");
    if (factor_dim(d, endv[0]) == 0) {
        MixedForm one(d, Shape{0, 0, 0, vs_scalar()});
        one.coef()[0] = 1;
        return FormSum::of(one);
    }
    FormSum n = one_plus_n - FormSum::of(end_identity(d, endv));
    for (const auto& [sh, f] : n.terms())
        require(sh.p + sh.a + sh.s > 0, "det_unipotent: degree-zero part is not the identity");
    n = truncate_legs(n, max_leg_degree);
    FormSum logsum(d);
    FormSum power = n;
    int bound = d.g + d.b + max_leg_degree + 1;
    for (int k = 1; k <= bound; ++k) {
        Rational c = Rational((k % 2 == 1) ? 1 : -1) / k;
        logsum = logsum + power * c;
        power = truncate_legs(wedge(power, n, Pairing::Compose), max_leg_degree);
        if (power.is_zero()) break;
    }
    FormSum tr = truncate_legs(value_trace(logsum), max_leg_degree);
    return exp_scalar(tr, d, max_leg_degree);
}

}  // namespace alcove
