#pragma once

#include "ihall/rational_function.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ihall {

/// Element a + b*sqrt(q) of the real quadratic extension Q(sqrt(q)), q prime.
/// Primality keeps sqrt(q) irrational, so this is a field and equality with
/// zero means a = b = 0.
class QuadExt {
public:
    QuadExt() : q_(0), a_(0), b_(0) {}
    QuadExt(long q, Rational a, Rational b) : q_(q), a_(std::move(a)), b_(std::move(b)) {
        check_prime(q);
    }
    static QuadExt of_rational(long q, const Rational& a) { return QuadExt(q, a, Rational(0)); }
    static QuadExt of_int(long q, long a) { return QuadExt(q, Rational(a), Rational(0)); }
    static QuadExt sqrt_q(long q) { return QuadExt(q, Rational(0), Rational(1)); }

    long q() const { return q_; }
    const Rational& rat_part() const { return a_; }
    const Rational& sqrt_part() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        if (x.is_zero() && y.is_zero()) return true;
        return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        long q = merge_q(x, y);
        return QuadExt(q, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        long q = merge_q(x, y);
        return QuadExt(q, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadExt operator-(const QuadExt& x) { return QuadExt(x.q_, -x.a_, -x.b_, nocheck()); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        long q = merge_q(x, y);
        return QuadExt(q, x.a_ * y.a_ + x.b_ * y.b_ * q, x.a_ * y.b_ + x.b_ * y.a_);
    }
    QuadExt inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        // (a + b s)(a - b s) = a^2 - b^2 q, nonzero since sqrt(q) is irrational
        Rational n = a_ * a_ - b_ * b_ * q_;
        return QuadExt(q_, a_ / n, -b_ / n, nocheck());
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    QuadExt pow(long n) const {
        QuadExt base = n < 0 ? inverse() : *this;
        unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
        QuadExt r = QuadExt::of_int(q_ == 0 ? 2 : q_, 1);
        r.q_ = q_;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(q_)); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool wrote = false;
        if (a_ != 0) {
            out << a_.get_str();
            wrote = true;
        }
        if (b_ != 0) {
            if (wrote) out << (b_ > 0 ? " + " : " - ");
            else if (b_ < 0) out << "-";
            Rational nb = abs(b_);
            if (nb != 1) out << nb.get_str() << "*";
            out << "sqrt(" << q_ << ")";
        }
        return out.str();
    }

private:
    struct nocheck {};
    QuadExt(long q, Rational a, Rational b, nocheck) : q_(q), a_(std::move(a)), b_(std::move(b)) {}

    static void check_prime(long q) {
        if (!is_prime(q)) throw std::domain_error("q must be prime, got " + std::to_string(q));
    }
    static long merge_q(const QuadExt& x, const QuadExt& y) {
        if (x.q_ != 0 && y.q_ != 0 && x.q_ != y.q_)
            throw std::domain_error("mixing quadratic extensions with different q");
        return x.q_ ? x.q_ : y.q_;
    }

    long q_; // 0 only for the default-constructed zero
    Rational a_, b_;
};

/// Exact substitution v -> sqrt(q) of a Laurent polynomial.
inline QuadExt eval_at_sqrt_q(const Laurent& p, long q) {
    if (!is_prime(q)) throw std::domain_error("q must be prime");
    Rational a(0), b(0);
    for (const auto& [e, c] : p.terms()) {
        // v^e = q^{e/2} for even e, q^{(e-1)/2} * sqrt(q) for odd e (e-1 is even,
        // so the division is exact for either sign).
        if (e % 2 == 0) a += c * rational_pow(Integer(q), e / 2);
        else b += c * rational_pow(Integer(q), (e - 1) / 2);
    }
    return QuadExt(q, a, b);
}

/// Substitution v -> sqrt(q) of a rational function; throws on a pole.
inline QuadExt eval_at_sqrt_q(const RationalFunction& f, long q) {
    QuadExt den = eval_at_sqrt_q(f.den(), q);
    if (den.is_zero()) throw std::domain_error("pole at v = sqrt(q)");
    return eval_at_sqrt_q(f.num(), q) / den;
}

} // namespace ihall
