#include "alcove/mixedform.hpp"

#include <algorithm>
#include <functional>

namespace alcove {

int factor_dim(const Dims& d, ValueFactor f) { return f.prim == Prim::K ? d.k : d.b; }

int factor_degree(ValueFactor f) {
    if (f.prim == Prim::B) return 0;
    return f.dual ? 1 : -1;
}

int value_dim(const Dims& d, const ValueSpace& v) {
    int r = 1;
    for (auto f : v) r *= factor_dim(d, f);
    return r;
}

int value_degree(const ValueSpace& v) {
    int r = 0;
    for (auto f : v) r += factor_degree(f);
    return r;
}

std::string value_name(const ValueSpace& v) {
    if (v.empty()) return "scalar";
    std::string s;
    for (auto f : v) {
        s += (f.prim == Prim::K ? "K" : "B");
        if (f.dual) s += "*";
    }
    return s;
}

bool Shape::operator<(const Shape& o) const {
    if (p != o.p) return p < o.p;
    if (a != o.a) return a < o.a;
    if (s != o.s) return s < o.s;
    return val < o.val;
}

std::string Shape::str() const {
    return "(" + std::to_string(p) + "," + std::to_string(a) + "," + std::to_string(s) + ")" +
           value_name(val);
}

MixedForm::MixedForm(const Dims& dims, Shape shape) : dims_(dims), shape_(std::move(shape)) {
    for (int i = 0; i < shape_.p; ++i) idim_.push_back(dims_.g);
    for (int i = 0; i < shape_.a; ++i) idim_.push_back(dims_.b);
    for (int i = 0; i < shape_.s; ++i) idim_.push_back(dims_.k);
    for (auto f : shape_.val) idim_.push_back(factor_dim(dims_, f));
    // Zero-dimensional legs are allowed; the form is then identically zero.
    size_t n = 1;
    for (int d : idim_) n *= size_t(d);
    coef_.assign(n, Rational(0));
}

int MixedForm::index_dim(int slot) const { return idim_[slot]; }

size_t MixedForm::flat(const std::vector<int>& idx) const {
    require(idx.size() == idim_.size(), "MixedForm::flat: index arity mismatch");
    size_t r = 0;
    for (size_t i = 0; i < idx.size(); ++i) r = r * idim_[i] + idx[i];
    return r;
}

bool MixedForm::is_zero() const {
    for (const auto& x : coef_)
        if (x != 0) return false;
    return true;
}

MixedForm MixedForm::operator+(const MixedForm& o) const {
    require(shape_ == o.shape_, "MixedForm::operator+: shape mismatch");
    MixedForm r = *this;
    for (size_t i = 0; i < coef_.size(); ++i) r.coef_[i] += o.coef_[i];
    return r;
}

MixedForm MixedForm::operator-(const MixedForm& o) const {
    require(shape_ == o.shape_, "MixedForm::operator-: shape mismatch");
    MixedForm r = *this;
    for (size_t i = 0; i < coef_.size(); ++i) r.coef_[i] -= o.coef_[i];
    return r;
}

MixedForm MixedForm::operator*(const Rational& c) const {
    MixedForm r = *this;
    for (auto& x : r.coef_) x *= c;
    return r;
}

namespace {

void decode(size_t flat, const std::vector<int>& dims, std::vector<int>& out) {
    out.assign(dims.size(), 0);
    for (int i = int(dims.size()) - 1; i >= 0; --i) {
        out[i] = int(flat % dims[i]);
        flat /= dims[i];
    }
}

int perm_sign(std::vector<int> v) {
    int sign = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) sign = -sign;
    return sign;
}

// All ascending-subset choices of size k from {0..n-1}.
void subsets(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            fn(pick);
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

int shuffle_sign(const std::vector<int>& s, int n) {
    // Inversions between S (x-legs) and its complement (y-legs).
    int inv = 0;
    for (size_t r = 0; r < s.size(); ++r) inv += s[r] - int(r);
    return inv % 2 == 0 ? 1 : -1;
}

// Generic projector over one leg group [lo, lo+len): averages over
// permutations with an optional sign.
MixedForm leg_projector(const MixedForm& f, int lo, int len, bool with_sign) {
    if (len <= 1) return f;
    std::vector<int> dims;
    for (int i = 0; i < f.index_count(); ++i) dims.push_back(f.index_dim(i));
    MixedForm out(f.dims(), f.shape());
    std::vector<int> idx, src;
    std::vector<int> perm(len);
    for (int i = 0; i < len; ++i) perm[i] = i;
    Rational norm = Rational(1) / factorial(len);
    do {
        int sg = with_sign ? perm_sign(perm) : 1;
        for (size_t pos = 0; pos < f.coef().size(); ++pos) {
            if (f.coef()[pos] == 0) continue;
            decode(pos, dims, idx);
            src = idx;
            for (int i = 0; i < len; ++i) src[lo + i] = idx[lo + perm[i]];
            out.at(src) += f.coef()[pos] * sg * norm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

MixedForm MixedForm::antisymmetrize_g() const { return leg_projector(*this, 0, shape_.p, true); }
MixedForm MixedForm::antisymmetrize_b() const {
    return leg_projector(*this, shape_.p, shape_.a, true);
}
MixedForm MixedForm::symmetrize_k() const {
    return leg_projector(*this, shape_.p + shape_.a, shape_.s, false);
}

Rational swap_sign(const Shape& x, const Shape& y) {
    int d1 = x.degree(), d2 = y.degree();
    int e1 = x.a + x.s, e2 = y.a + y.s;
    return (d1 * d2 + e1 * e2) % 2 == 0 ? Rational(1) : Rational(-1);
}

MixedForm wedge(const MixedForm& x, const MixedForm& y, Pairing pairing) {
    require(x.dims() == y.dims(), "wedge: dims mismatch");
    const Shape& sx = x.shape();
    const Shape& sy = y.shape();

    ValueSpace vout;
    int contracted_dim = 0;
    if (pairing == Pairing::Tensor) {
        vout = sx.val;
        vout.insert(vout.end(), sy.val.begin(), sy.val.end());
    } else {
        require(!sx.val.empty() && !sy.val.empty(), "wedge: compose needs Hom-type values");
        ValueFactor xin = sx.val.back(), yout = sy.val.front();
        require(xin.dual && !yout.dual && xin.prim == yout.prim,
                "wedge: incompatible value spaces for composition");
        contracted_dim = factor_dim(x.dims(), xin);
        vout.assign(sx.val.begin(), sx.val.end() - 1);
        vout.insert(vout.end(), sy.val.begin() + 1, sy.val.end());
    }

    Shape so{sx.p + sy.p, sx.a + sy.a, sx.s + sy.s, vout};
    MixedForm out(x.dims(), so);

    // Block reorder: y's g-legs and b-legs pass x's k-legs; x's value passes
    // y's g- and k-legs.
    int cross = sx.s * (sy.p + sy.a) + value_degree(sx.val) * (sy.p + sy.s);
    Rational base_sign = (cross % 2 == 0) ? 1 : -1;

    std::vector<int> xdims, ydims;
    for (int i = 0; i < x.index_count(); ++i) xdims.push_back(x.index_dim(i));
    for (int i = 0; i < y.index_count(); ++i) ydims.push_back(y.index_dim(i));

    int nxv = int(sx.val.size()) - (pairing == Pairing::Compose ? 1 : 0);
    int nyv = int(sy.val.size()) - (pairing == Pairing::Compose ? 1 : 0);

    std::vector<int> xi, yi;
    std::vector<int> oidx(out.index_count());
    for (size_t xp = 0; xp < x.coef().size(); ++xp) {
        if (x.coef()[xp] == 0) continue;
        decode(xp, xdims, xi);
        for (size_t yp = 0; yp < y.coef().size(); ++yp) {
            if (y.coef()[yp] == 0) continue;
            decode(yp, ydims, yi);
            if (pairing == Pairing::Compose &&
                xi[sx.p + sx.a + sx.s + nxv] != yi[sy.p + sy.a + sy.s])
                continue;
            Rational term = base_sign * x.coef()[xp] * y.coef()[yp];
            // value indices of the output
            for (int i = 0; i < nxv; ++i) oidx[so.p + so.a + so.s + i] = xi[sx.p + sx.a + sx.s + i];
            for (int i = 0; i < nyv; ++i)
                oidx[so.p + so.a + so.s + nxv + i] =
                    yi[sy.p + sy.a + sy.s + (pairing == Pairing::Compose ? 1 : 0) + i];
            subsets(so.p, sx.p, [&](const std::vector<int>& sg) {
                int sgn_g = shuffle_sign(sg, so.p);
                std::vector<bool> ing(so.p, false);
                for (int v : sg) ing[v] = true;
                {
                    int ix = 0, iy = 0;
                    for (int posn = 0; posn < so.p; ++posn)
                        oidx[posn] = ing[posn] ? xi[ix++] : yi[iy++];
                }
                // Fix the g-positions chosen; now shuffle b-legs.
                subsets(so.a, sx.a, [&](const std::vector<int>& sb) {
                    int sgn_b = shuffle_sign(sb, so.a);
                    std::vector<bool> inb(so.a, false);
                    for (int v : sb) inb[v] = true;
                    {
                        int ix = 0, iy = 0;
                        for (int posn = 0; posn < so.a; ++posn)
                            oidx[so.p + posn] =
                                inb[posn] ? xi[sx.p + ix++] : yi[sy.p + iy++];
                    }
                    subsets(so.s, sx.s, [&](const std::vector<int>& sk) {
                        std::vector<bool> ink(so.s, false);
                        for (int v : sk) ink[v] = true;
                        {
                            int ix = 0, iy = 0;
                            for (int posn = 0; posn < so.s; ++posn)
                                oidx[so.p + so.a + posn] =
                                    ink[posn] ? xi[sx.p + sx.a + ix++] : yi[sy.p + sy.a + iy++];
                        }
                        out.at(oidx) += term * sgn_g * sgn_b;
                    });
                });
            });
        }
    }
    return out;
}

MixedForm value_trace(const MixedForm& x) {
    const Shape& s = x.shape();
    require(s.val.size() == 2 && s.val[0].prim == s.val[1].prim && !s.val[0].dual &&
                s.val[1].dual,
            "value_trace: value space is not End-type");
    Shape so{s.p, s.a, s.s, vs_scalar()};
    MixedForm out(x.dims(), so);
    int legs = s.p + s.a + s.s;
    std::vector<int> dims;
    for (int i = 0; i < x.index_count(); ++i) dims.push_back(x.index_dim(i));
    std::vector<int> idx, oidx(legs);
    for (size_t pos = 0; pos < x.coef().size(); ++pos) {
        if (x.coef()[pos] == 0) continue;
        decode(pos, dims, idx);
        if (idx[legs] != idx[legs + 1]) continue;
        for (int i = 0; i < legs; ++i) oidx[i] = idx[i];
        out.at(oidx) += x.coef()[pos];
    }
    return out;
}

void FormSum::add(const MixedForm& f) {
    if (f.is_zero()) return;
    if (terms_.empty() && dims_.g == 0 && dims_.b == 0 && dims_.k == 0) dims_ = f.dims();
    auto it = terms_.find(f.shape());
    if (it == terms_.end()) {
        terms_.emplace(f.shape(), f);
    } else {
        it->second = it->second + f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormSum FormSum::operator+(const FormSum& o) const {
    FormSum r = *this;
    for (const auto& [sh, f] : o.terms_) r.add(f);
    return r;
}

FormSum FormSum::operator-(const FormSum& o) const {
    FormSum r = *this;
    for (const auto& [sh, f] : o.terms_) r.add(f * Rational(-1));
    return r;
}

FormSum FormSum::operator*(const Rational& c) const {
    FormSum r(dims_);
    if (c == 0) return r;
    for (const auto& [sh, f] : terms_) r.add(f * c);
    return r;
}

bool FormSum::operator==(const FormSum& o) const { return (*this - o).is_zero(); }

FormSum FormSum::degree_part(int deg) const {
    FormSum r(dims_);
    for (const auto& [sh, f] : terms_)
        if (sh.degree() == deg) r.add(f);
    return r;
}

const MixedForm* FormSum::find(const Shape& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? nullptr : &it->second;
}

FormSum FormSum::of(const MixedForm& f) {
    FormSum r(f.dims());
    r.add(f);
    return r;
}

FormSum wedge(const FormSum& x, const FormSum& y, Pairing pairing) {
    FormSum r(x.dims());
    for (const auto& [sx, fx] : x.terms())
        for (const auto& [sy, fy] : y.terms()) r.add(wedge(fx, fy, pairing));
    return r;
}

FormSum value_trace(const FormSum& x) {
    FormSum r(x.dims());
    for (const auto& [sh, f] : x.terms()) r.add(value_trace(f));
    return r;
}

}  // namespace alcove
