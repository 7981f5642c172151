#pragma once

#include "ihall/qnum.hpp"

#include <stdexcept>
#include <vector>

namespace ihall {

// Exponent bookkeeping for the higher Serre-type relation on the rank-2
// split pair: a, b are the two arrow counts, and the remaining parameters
// index the alternating sums produced by expanding products of divided
// powers. Everything here is a polynomial in its integer arguments.

inline long binom2(long n) { return n * (n - 1) / 2; }

/// Power of v attached to a class with invariants (u, w) in the closed
/// triple-product formula [sS1]*[S2]*[tS1].
inline long p_tilde(long a, long b, long r, long s, long t, long u, long w) {
    return 2 * (s - r) * (t - r - a) - s * (t - a) + 2 * b * r - 2 * r * (t - r) - r * r + r * s +
           t * t + binom2(t) + (s - r) * (s - r) + binom2(s - r) + (u - (t - r)) * ((t - r) - w) + 1;
}

/// Combined exponent for the even-n branch of the alternating sum; the odd-n
/// branch uses z_tilde + 2k - 2m.
inline long z_tilde(long a, long b, long k, long m, long n, long r, long u, long w) {
    return k * (k - 1) + m * (m + 1) - binom2(n - 2 * k) - binom2(1 + a + b - n - 2 * m) +
           p_tilde(a, b, r, n - 2 * k, 1 + a + b - n - 2 * m, u, w);
}

/// The part of the regrouped exponent that depends only on (a,b,d,theta,u,w).
inline long l_tilde(long a, long b, long d, long theta, long u, long w) {
    return d * (d - 1) - a * theta + (u + w + theta - b) * (1 + a + b - 2 * d - theta) - u * w +
           theta * theta + 1;
}

/// Exponent after the substitution theta = n + m - k - d; requires k+m+r = d.
inline long z_bar(long a, long b, long d, long theta, long u, long w, long k, long m, long r) {
    if (k + m + r != d) throw std::invalid_argument("z_bar requires k + m + r = d");
    if (theta < 0) throw std::invalid_argument("z_bar requires theta >= 0");
    return binom2(r + 1) - 2 * (k - 1) * m + l_tilde(a, b, d, theta, u, w);
}

/// Parameter tuple for the vanishing identity, with its admissibility
/// constraints: 0 <= 2d <= a+b+1, 0 <= w <= b, b+1-2d <= u <= 1+a+b-2d, and
/// (u, d) != (0, 0).
struct SerreParams {
    long a = 0, b = 0, d = 0, u = 0, w = 0;

    bool admissible() const {
        if (a < 0 || b < 0 || d < 0 || u < 0 || w < 0) return false;
        if (2 * d > a + b + 1) return false;
        if (w > b) return false;
        if (u < b + 1 - 2 * d || u > 1 + a + b - 2 * d) return false;
        if (u == 0 && d == 0) return false;
        return true;
    }
};

/// All admissible tuples with a + b <= max_ab, in lexicographic order.
inline std::vector<SerreParams> admissible_tuples(long max_ab) {
    std::vector<SerreParams> out;
    for (long a = 0; a <= max_ab; ++a)
        for (long b = 0; a + b <= max_ab; ++b)
            for (long d = 0; 2 * d <= a + b + 1; ++d)
                for (long u = 0; u <= 1 + a + b; ++u)
                    for (long w = 0; w <= b; ++w) {
                        SerreParams p{a, b, d, u, w};
                        if (p.admissible()) out.push_back(p);
                    }
    return out;
}

/// Triple sum over k+m+r = d of (-1)^r v^{C(r+1,2)-2(k-1)m} / ([r]! [2k]!! [2m]!!);
/// identically 1 at d = 0 and 0 for every d >= 1.
inline RationalFunction lemma_sum(long d) {
    if (d < 0) throw std::domain_error("lemma_sum needs d >= 0");
    RationalFunction total;
    for (long k = 0; k <= d; ++k)
        for (long m = 0; k + m <= d; ++m) {
            const long r = d - k - m;
            Laurent num = Laurent::v(binom2(r + 1) - 2 * (k - 1) * m);
            if (r % 2) num = -num;
            Laurent den = quantum_factorial(r) * quantum_double_factorial(2 * k) *
                          quantum_double_factorial(2 * m);
            total += RationalFunction(num, den);
        }
    return total;
}

/// The double alternating sum, evaluated exactly as displayed: summation over
/// even and odd n with r interpreted as d - k - m and the indicator
/// delta{0 <= r <= n - 2k}. Admissible parameters make it vanish.
inline RationalFunction t_tilde(long a, long b, long d, long u, long w) {
    RationalFunction total;
    for (long n = 0; n <= a + b + 1; ++n) {
        for (long k = 0; k <= n / 2; ++k) {
            for (long m = 0; 2 * m <= a + b + 1 - n; ++m) {
                const long r = d - k - m;
                if (r < 0 || r > n - 2 * k) continue;
                const long bottom = 1 + a + b - n - 2 * m - r - w;
                Laurent binom = gauss_binomial_or_zero(u - w, bottom);
                if (binom.is_zero()) continue;
                long e = -(1 + a + b - n - 2 * m) * b + z_tilde(a, b, k, m, n, r, u, w);
                if (n % 2) e += 2 * k - 2 * m;
                Laurent num = Laurent::v(e) * binom;
                if (n % 2) num = -num;
                Laurent den = quantum_double_factorial(2 * k) * quantum_double_factorial(2 * m) *
                              quantum_factorial(r);
                total += RationalFunction(num, den);
            }
        }
    }
    return total;
}

/// The same sum after the substitution theta = n + m - k - d, grouped as an
/// outer sum over theta with the k+m+r = d triple sum inside. Agreement with
/// t_tilde is a transcription cross-check, not a reuse of it.
inline RationalFunction t_tilde_theta(long a, long b, long d, long u, long w) {
    RationalFunction total;
    for (long theta = 0; 1 + a + b - 2 * d - theta - w >= 0; ++theta) {
        const long bottom = 1 + a + b - 2 * d - theta - w;
        Laurent binom = gauss_binomial_or_zero(u - w, bottom);
        if (binom.is_zero()) continue;
        RationalFunction inner;
        for (long k = 0; k <= d; ++k)
            for (long m = 0; k + m <= d; ++m) {
                const long r = d - k - m;
                const bool n_even = (theta + r) % 2 == 0;
                long e = binom2(r + 1) - (n_even ? 2 * (k - 1) * m : 2 * k * (m - 1));
                Laurent num = Laurent::v(e);
                if (r % 2) num = -num;
                Laurent den = quantum_factorial(r) * quantum_double_factorial(2 * k) *
                              quantum_double_factorial(2 * m);
                inner += RationalFunction(num, den);
            }
        Laurent outer = Laurent::v(l_tilde(a, b, d, theta, u, w)) * binom;
        if (theta % 2) outer = -outer;
        total += RationalFunction(outer) * inner;
    }
    return total;
}

/// Alternating Gaussian-binomial sum sum_{x=0}^{n} (-1)^x v^{cx} [n x].
/// Vanishes whenever c = n - 1 (mod 2) and |c| <= n - 1.
inline RationalFunction alt_binom_sum(long n, long c) {
    if (n < 0) throw std::domain_error("alt_binom_sum needs n >= 0");
    Laurent total;
    for (long x = 0; x <= n; ++x) {
        Laurent term = Laurent::v(c * x) * gauss_binomial(n, x);
        if (x % 2) term = -term;
        total += term;
    }
    return RationalFunction(total);
}

} // namespace ihall
