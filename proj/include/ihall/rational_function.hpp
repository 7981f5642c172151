#pragma once

#include "ihall/laurent.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace ihall {

/// Element of Q(v), kept in a canonical reduced form: the denominator is an
/// ordinary polynomial with nonzero constant term and leading coefficient 1,
/// the gcd of numerator and denominator is 1, and any v^k shift lives in the
/// (Laurent) numerator. Equality with zero is then decidable structurally:
/// the fraction is zero iff the numerator is.
class RationalFunction {
public:
    RationalFunction() : num_(Laurent::zero()), den_(Laurent::one()) {}
    RationalFunction(const Laurent& num, const Laurent& den) : num_(num), den_(den) { normalize(); }
    /* implicit */ RationalFunction(const Laurent& p) : num_(p), den_(Laurent::one()) {}
    explicit RationalFunction(const Rational& c) : num_(Laurent(c)), den_(Laurent::one()) {}
    explicit RationalFunction(long c) : num_(Laurent(c)), den_(Laurent::one()) {}

    static RationalFunction zero() { return RationalFunction(); }
    static RationalFunction one() { return RationalFunction(1); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// True when the value is actually a Laurent polynomial.
    bool is_polynomial() const { return den_ == Laurent::one(); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Laurent::one();
            return;
        }
        const long ns = num_.min_exp();
        const long ds = den_.min_exp();
        auto n = detail::to_dense(num_, ns);
        auto d = detail::to_dense(den_, ds);
        auto g = detail::gcd(n, d);
        if (g.size() > 1) {
            n = detail::divmod(n, g).first;
            d = detail::divmod(d, g).first;
        }
        const Rational lead = d.back();
        for (auto& c : n) c /= lead;
        for (auto& c : d) c /= lead;
        num_ = detail::from_dense(n, ns - ds);
        den_ = detail::from_dense(d, 0);
    }

    Laurent num_;
    Laurent den_;
};

} // namespace ihall
