#pragma once

#include <vector>

#include "alcove/rational.hpp"

namespace alcove {

// Truncated univariate power series over the rationals; coefficient k is the
// coefficient of x^k, kept through order trunc() inclusive.
class PowerSeries {
  public:
    PowerSeries() = default;
    PowerSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}
    static PowerSeries constant(const Rational& v, int trunc);

    int trunc() const { return int(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational& operator[](int k) { return c_[k]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;

    // Multiplicative inverse; requires nonzero constant term.
    PowerSeries inverse() const;
    // exp of a series with zero constant term.
    PowerSeries exp() const;
    // log(1 + n) for n = *this with zero constant term.
    PowerSeries log1p() const;

  private:
    std::vector<Rational> c_;
};

// Bernoulli number B_k in the convention with B_1 = -1/2, computed from the
// defining recurrence sum_{j<=m} C(m+1,j) B_j = 0.
Rational bernoulli(long k);

// Coefficients of P(x) = x / (1 - e^{-x}) through order n, computed by exact
// series division (independent of bernoulli()).
std::vector<Rational> p_series(int n);

// The same coefficients via P(x) = exp(-sum_{k>=1} (B_k/k) x^k/k!).
std::vector<Rational> p_series_exp_form(int n);

// Coefficients of log((1 - e^{-x})/x) = sum_{k>=1} (B_k/k) x^k/k! through
// order n, by series division and log (oracle for Duflo expansions).
std::vector<Rational> duflo_log_series(int n);

}  // namespace alcove
