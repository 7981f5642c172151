#pragma once

#include "ihall/quad_ext.hpp"
#include "ihall/rational_function.hpp"

#include <stdexcept>

namespace ihall {

/// Quantum integer [m] = (v^m - v^-m)/(v - v^-1) = sum_{j=0}^{|m|-1} sgn(m) v^{|m|-1-2j}.
/// Negative arguments follow [-m] = -[m].
inline Laurent quantum_integer(long m) {
    Laurent p;
    long n = m < 0 ? -m : m;
    Rational sign(m < 0 ? -1 : 1);
    for (long j = 0; j < n; ++j) p += Laurent::monomial(sign, n - 1 - 2 * j);
    return p;
}

/// [r]! = [1][2]...[r], with [0]! = 1.
inline Laurent quantum_factorial(long r) {
    if (r < 0) throw std::domain_error("quantum_factorial of negative argument");
    Laurent p = Laurent::one();
    for (long i = 1; i <= r; ++i) p *= quantum_integer(i);
    return p;
}

/// [2r]!! = [2][4]...[2r]; only even arguments are defined.
inline Laurent quantum_double_factorial(long m) {
    if (m < 0 || m % 2 != 0) throw std::domain_error("quantum double factorial needs even m >= 0");
    Laurent p = Laurent::one();
    for (long i = 1; i <= m / 2; ++i) p *= quantum_integer(2 * i);
    return p;
}

/// Gaussian binomial [m r] = [m][m-1]...[m-r+1] / [r]! for any integer m and
/// r >= 0. The division is exact in Z[v, v^-1].
inline Laurent gauss_binomial(long m, long r) {
    if (r < 0) throw std::domain_error("gauss_binomial with negative lower index");
    Laurent num = Laurent::one();
    for (long i = 0; i < r; ++i) num *= quantum_integer(m - i);
    return num.divide_exact(quantum_factorial(r));
}

/// Same, with the convention that a negative lower index gives 0. This is the
/// form summations use.
inline Laurent gauss_binomial_or_zero(long m, long r) {
    if (r < 0) return Laurent::zero();
    return gauss_binomial(m, r);
}

/// Pochhammer symbol (a; x)_n = (1 - a)(1 - a x) ... (1 - a x^{n-1}).
inline RationalFunction pochhammer(const RationalFunction& a, const RationalFunction& x, long n) {
    if (n < 0) throw std::domain_error("pochhammer with negative length");
    RationalFunction p = RationalFunction::one();
    RationalFunction ax = a;
    for (long j = 0; j < n; ++j) {
        p *= RationalFunction::one() - ax;
        ax *= x;
    }
    return p;
}

inline QuadExt quantum_integer_at(long m, long q) { return eval_at_sqrt_q(quantum_integer(m), q); }
inline QuadExt quantum_factorial_at(long r, long q) { return eval_at_sqrt_q(quantum_factorial(r), q); }

} // namespace ihall
