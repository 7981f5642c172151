#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ihall {

// Arbitrary-precision integers and rationals. mpq_class keeps the canonical
// form we rely on everywhere: denominator > 0, gcd(|num|, den) = 1, zero = 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// q^e for e possibly negative.
inline Rational rational_pow(const Integer& base, long e) {
    Integer p = int_pow(base, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? make_rational(Integer(1), p) : Rational(p);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

} // namespace ihall
