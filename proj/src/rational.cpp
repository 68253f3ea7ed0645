#include "alcove/rational.hpp"

namespace alcove {

Rational rat_pow(const Rational& x, long e) {
    require(e >= 0 || x != 0, "rat_pow: negative power of zero");
    Rational r = 1;
    Rational base = e >= 0 ? x : Rational(1) / x;
    long n = e >= 0 ? e : -e;
    for (long i = 0; i < n; ++i) r *= base;
    return r;
}

Rational factorial(long n) {
    require(n >= 0, "factorial: negative argument");
    Rational r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

Rational parse_rational(const std::string& s) {
    require(!s.empty(), "parse_rational: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        require(den != 0, "parse_rational: zero denominator in '" + s + "'");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw error("parse_rational: malformed rational '" + s + "'");
    }
}

std::string rat_str(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::uint64_t RatRng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rational RatRng::small(int bound) {
    long num = static_cast<long>(next_u64() % (2 * bound + 1)) - bound;
    long den = 1 + static_cast<long>(next_u64() % 3);
    return Rational(num, den);
}

int RatRng::index(int n) {
    require(n > 0, "RatRng::index: empty range");
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

}  // namespace alcove
