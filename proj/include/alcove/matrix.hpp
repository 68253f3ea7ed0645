#pragma once

#include <optional>
#include <vector>

#include "alcove/rational.hpp"

namespace alcove {

using Vec = std::vector<Rational>;

// Dense rational matrix. Operators act by left multiplication: (M x)_i.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Rational& c) const;
    bool operator==(const Mat& o) const;

    Mat transpose() const;
    bool is_zero() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

Vec mat_apply(const Mat& m, const Vec& x);
Vec vec_add(const Vec& x, const Vec& y);
Vec vec_sub(const Vec& x, const Vec& y);
Vec vec_scale(const Rational& c, const Vec& x);
bool vec_is_zero(const Vec& x);

// Row echelon form with leftmost-pivot selection (first nonzero row entry in
// column order, no pivoting heuristics). Returns pivot column indices.
Mat rref(Mat m, std::vector<int>* pivot_cols = nullptr);

int rank(const Mat& m);

// Exact solution of A x = b, if one exists.
std::optional<Vec> solve_linear(const Mat& a, const Vec& b);

std::vector<Vec> kernel_basis(const Mat& a);

}  // namespace alcove
