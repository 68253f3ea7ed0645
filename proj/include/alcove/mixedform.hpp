#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "alcove/matrix.hpp"

namespace alcove {

// Leg dimensions of the three grading directions: g (CE one-forms, odd of
// cohomological degree 1), b (normal-bundle duals, odd of degree 0), k
// (kernel duals, shifted-symmetric of degree 1).
struct Dims {
    int g = 0, b = 0, k = 0;
    bool operator==(const Dims& o) const { return g == o.g && b == o.b && k == o.k; }
};

enum class Prim : unsigned char { K, B };

struct ValueFactor {
    Prim prim;
    bool dual;
    bool operator==(const ValueFactor& o) const { return prim == o.prim && dual == o.dual; }
    bool operator<(const ValueFactor& o) const {
        return prim != o.prim ? prim < o.prim : dual < o.dual;
    }
};

// Value space of a form: an ordered tensor product of shifted primitives.
// Empty list = scalar. Hom-type values are stored output-factor first.
using ValueSpace = std::vector<ValueFactor>;

inline ValueSpace vs_scalar() { return {}; }
inline ValueSpace vs_k() { return {{Prim::K, false}}; }
inline ValueSpace vs_b() { return {{Prim::B, false}}; }
inline ValueSpace vs_hom(Prim in, Prim out) {
    return {{out, false}, {in, true}};
}
inline ValueSpace vs_end_k() { return vs_hom(Prim::K, Prim::K); }
inline ValueSpace vs_end_b() { return vs_hom(Prim::B, Prim::B); }
inline ValueSpace vs_hom_bk() { return vs_hom(Prim::B, Prim::K); }
inline ValueSpace vs_hom_kb() { return vs_hom(Prim::K, Prim::B); }

int factor_dim(const Dims& d, ValueFactor f);
// Internal degree: K carries the [1]-shift (plain -1, dual +1); B is flat.
int factor_degree(ValueFactor f);
int value_dim(const Dims& d, const ValueSpace& v);
int value_degree(const ValueSpace& v);
std::string value_name(const ValueSpace& v);

struct Shape {
    int p = 0, a = 0, s = 0;
    ValueSpace val;

    bool operator==(const Shape& o) const {
        return p == o.p && a == o.a && s == o.s && val == o.val;
    }
    bool operator<(const Shape& o) const;
    // Cohomological degree: each g-leg and k-leg contributes +1, plus the
    // internal degree of the value space.
    int degree() const { return p + s + value_degree(val); }
    std::string str() const;
};

// Dense tensor with p antisymmetric g-legs, a antisymmetric b-legs, s
// symmetric k-legs and a value multi-index, stored in evaluation convention:
// coef[i1..ip, j1..ja, l1..ls, v] is the value on the corresponding basis
// tuple. Index order: g-legs, b-legs, k-legs, value factors.
class MixedForm {
  public:
    MixedForm() = default;
    MixedForm(const Dims& dims, Shape shape);

    const Dims& dims() const { return dims_; }
    const Shape& shape() const { return shape_; }
    const std::vector<Rational>& coef() const { return coef_; }
    std::vector<Rational>& coef() { return coef_; }

    int index_count() const { return shape_.p + shape_.a + shape_.s + int(shape_.val.size()); }
    int index_dim(int slot) const;
    size_t flat(const std::vector<int>& idx) const;
    const Rational& at(const std::vector<int>& idx) const { return coef_[flat(idx)]; }
    Rational& at(const std::vector<int>& idx) { return coef_[flat(idx)]; }

    bool is_zero() const;
    MixedForm operator+(const MixedForm& o) const;
    MixedForm operator-(const MixedForm& o) const;
    MixedForm operator*(const Rational& c) const;

    // Projectors used when building tensors from formula evaluations; exact
    // identities on already-(anti)symmetric data.
    MixedForm antisymmetrize_g() const;
    MixedForm antisymmetrize_b() const;
    MixedForm symmetrize_k() const;

  private:
    Dims dims_;
    Shape shape_;
    std::vector<int> idim_;
    std::vector<Rational> coef_;
};

enum class Pairing {
    Tensor,   // concatenate value factors (scalars multiply)
    Compose,  // contract last factor of x (dual) with first factor of y (plain)
};

// Graded wedge with value pairing. Legs recombine by shuffles: g-legs and
// b-legs antisymmetrically, k-legs symmetrically. Sign rule is the bigraded
// Koszul convention with bidegrees g:(0,1), b:(1,0), k:(1,1) and values of
// pure internal degree.
MixedForm wedge(const MixedForm& x, const MixedForm& y, Pairing pairing);

// Sign picked up when the legs of x and y are exchanged: (-1)^{d1 d2 + e1 e2}
// with d = p + s + value degree, e = a + s.
Rational swap_sign(const Shape& x, const Shape& y);

// Trace over a Hom-type value [out, in] with matching primitives.
MixedForm value_trace(const MixedForm& x);

// Sum of mixed forms of different shapes over a common Dims.
class FormSum {
  public:
    FormSum() = default;
    explicit FormSum(const Dims& d) : dims_(d) {}

    const Dims& dims() const { return dims_; }
    const std::map<Shape, MixedForm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const MixedForm& f);
    FormSum operator+(const FormSum& o) const;
    FormSum operator-(const FormSum& o) const;
    FormSum operator*(const Rational& c) const;
    bool operator==(const FormSum& o) const;

    // Terms of a fixed cohomological degree / value space.
    FormSum degree_part(int deg) const;
    const MixedForm* find(const Shape& s) const;

    static FormSum of(const MixedForm& f);

  private:
    Dims dims_;
    std::map<Shape, MixedForm> terms_;
};

FormSum wedge(const FormSum& x, const FormSum& y, Pairing pairing);
FormSum value_trace(const FormSum& x);

}  // namespace alcove
