#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace alcove {

using Integer = boost::multiprecision::cpp_int;
// Always reduced, denominator > 0 (canonical form maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

Rational rat_pow(const Rational& x, long e);
Rational factorial(long n);
Rational binomial(long n, long k);

// Accepts "p", "-p", "p/q"; rejects zero denominators and malformed input.
Rational parse_rational(const std::string& s);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
std::string rat_str(const Rational& x);

// Deterministic small-rational generator for property tests and random
// quadruples.
class RatRng {
  public:
    explicit RatRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next_u64();
    // numerator in [-bound, bound], denominator in {1, 2, 3}
    Rational small(int bound = 3);
    int index(int n);  // uniform in [0, n)

  private:
    std::uint64_t state_;
};

}  // namespace alcove
