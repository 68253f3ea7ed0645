#include "alcove/series.hpp"

namespace alcove {

PowerSeries PowerSeries::constant(const Rational& v, int trunc) {
    std::vector<Rational> c(trunc + 1);
    c[0] = v;
    return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    int n = std::min(trunc(), o.trunc());
    std::vector<Rational> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = c_[k] + o.c_[k];
    return PowerSeries(std::move(r));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    int n = std::min(trunc(), o.trunc());
    std::vector<Rational> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = c_[k] - o.c_[k];
    return PowerSeries(std::move(r));
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    int n = std::min(trunc(), o.trunc());
    std::vector<Rational> r(n + 1);
    for (int i = 0; i <= n; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; i + j <= n && j <= o.trunc(); ++j)
            if (o.c_[j] != 0) r[i + j] += c_[i] * o.c_[j];
    }
    return PowerSeries(std::move(r));
}

PowerSeries PowerSeries::inverse() const {
    require(c_[0] != 0, "PowerSeries::inverse: zero constant term");
    int n = trunc();
    std::vector<Rational> r(n + 1);
    r[0] = Rational(1) / c_[0];
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j) s += c_[j] * r[k - j];
        r[k] = -s / c_[0];
    }
    return PowerSeries(std::move(r));
}

PowerSeries PowerSeries::exp() const {
    require(c_[0] == 0, "PowerSeries::exp: nonzero constant term");
    int n = trunc();
    PowerSeries result = constant(1, n);
    PowerSeries term = constant(1, n);
    for (int k = 1; k <= n; ++k) {
        term = term * *this;
        for (int j = 0; j <= n; ++j) term[j] /= k;
        result = result + term;
    }
    return result;
}

PowerSeries PowerSeries::log1p() const {
    require(c_[0] == 0, "PowerSeries::log1p: nonzero constant term");
    int n = trunc();
    PowerSeries result = constant(0, n);
    PowerSeries power = constant(1, n);
    for (int k = 1; k <= n; ++k) {
        power = power * *this;
        Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
        for (int j = 0; j <= n; ++j) result[j] += sign * power[j] / k;
    }
    return result;
}

Rational bernoulli(long k) {
    require(k >= 0, "bernoulli: negative index");
    static std::vector<Rational> cache{Rational(1)};
    for (long m = long(cache.size()); m <= k; ++m) {
        Rational s = 0;
        for (long j = 0; j < m; ++j) s += binomial(m + 1, j) * cache[j];
        cache.push_back(-s / binomial(m + 1, m));
    }
    return cache[k];
}

std::vector<Rational> p_series(int n) {
    require(n >= 0, "p_series: negative order");
    // q(x) = (1 - e^{-x})/x = sum_k (-1)^k x^k/(k+1)!
    std::vector<Rational> q(n + 1);
    for (int k = 0; k <= n; ++k) q[k] = rat_pow(-1, k) / factorial(k + 1);
    return PowerSeries(std::move(q)).inverse().coeffs();
}

std::vector<Rational> p_series_exp_form(int n) {
    require(n >= 0, "p_series_exp_form: negative order");
    std::vector<Rational> arg(n + 1);
    for (int k = 1; k <= n; ++k) arg[k] = -bernoulli(k) / k / factorial(k);
    return PowerSeries(std::move(arg)).exp().coeffs();
}

std::vector<Rational> duflo_log_series(int n) {
    require(n >= 0, "duflo_log_series: negative order");
    std::vector<Rational> q(n + 1);
    for (int k = 0; k <= n; ++k) q[k] = rat_pow(-1, k) / factorial(k + 1);
    PowerSeries s(std::move(q));
    s[0] -= 1;  // q = 1 + n with n nilpotent-to-truncation
    return s.log1p().coeffs();
}

}  // namespace alcove
