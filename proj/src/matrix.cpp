#include "alcove/matrix.hpp"

namespace alcove {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    require(cols_ == o.rows_, "Mat::operator*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j) == 0) continue;
                r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "Mat::operator+: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "Mat::operator-: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

Mat Mat::operator*(const Rational& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

Vec mat_apply(const Mat& m, const Vec& x) {
    require(int(x.size()) == m.cols(), "mat_apply: shape mismatch");
    Vec r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && x[j] != 0) r[i] += m.at(i, j) * x[j];
    return r;
}

Vec vec_add(const Vec& x, const Vec& y) {
    require(x.size() == y.size(), "vec_add: shape mismatch");
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

Vec vec_sub(const Vec& x, const Vec& y) {
    require(x.size() == y.size(), "vec_sub: shape mismatch");
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

Vec vec_scale(const Rational& c, const Vec& x) {
    Vec r = x;
    for (auto& v : r) v *= c;
    return r;
}

bool vec_is_zero(const Vec& x) {
    for (const auto& v : x)
        if (v != 0) return false;
    return true;
}

Mat rref(Mat m, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++row;
    }
    return m;
}

int rank(const Mat& m) {
    std::vector<int> pivots;
    rref(m, &pivots);
    return int(pivots.size());
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
    require(int(b.size()) == a.rows(), "solve_linear: shape mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> pivots;
    Mat r = rref(std::move(aug), &pivots);
    for (int p : pivots)
        if (p == a.cols()) return std::nullopt;  // inconsistent row
    Vec x(a.cols());
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r.at(int(k), a.cols());
    return x;
}

std::vector<Vec> kernel_basis(const Mat& a) {
    std::vector<int> pivots;
    Mat r = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_pivot[j]) continue;
        Vec v(a.cols());
        v[j] = 1;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r.at(int(k), j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace alcove
