#pragma once

#include "ihall/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ihall {

/// Laurent polynomial in the formal variable v with rational coefficients,
/// stored as a sparse exponent -> coefficient map. Zero coefficients are
/// never stored, so equality is structural.
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(const Rational& c) {
        if (c != 0) coef_[0] = c;
    }
    explicit Laurent(long c) : Laurent(Rational(c)) {}

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return Laurent(1); }

    /// monomial c * v^e
    static Laurent monomial(const Rational& c, long e) {
        Laurent p;
        if (c != 0) p.coef_[e] = c;
        return p;
    }
    static Laurent v(long e = 1) { return monomial(Rational(1), e); }

    bool is_zero() const { return coef_.empty(); }
    const std::map<long, Rational>& terms() const { return coef_; }

    long min_exp() const {
        if (is_zero()) throw std::domain_error("min_exp of zero polynomial");
        return coef_.begin()->first;
    }
    long max_exp() const {
        if (is_zero()) throw std::domain_error("max_exp of zero polynomial");
        return coef_.rbegin()->first;
    }

    Rational coefficient(long e) const {
        auto it = coef_.find(e);
        return it == coef_.end() ? Rational(0) : it->second;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.coef_ == b.coef_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.coef_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, c] : o.coef_) add_term(e, -c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator-(const Laurent& a) {
        Laurent r;
        for (const auto& [e, c] : a.coef_) r.coef_[e] = -c;
        return r;
    }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.coef_)
            for (const auto& [eb, cb] : b.coef_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    Laurent& operator*=(const Rational& c) {
        if (c == 0) { coef_.clear(); return *this; }
        for (auto& [e, cc] : coef_) cc *= c;
        return *this;
    }
    friend Laurent operator*(Laurent a, const Rational& c) { return a *= c; }
    friend Laurent operator*(const Rational& c, Laurent a) { return a *= c; }

    Laurent pow(unsigned long n) const {
        Laurent r = one(), b = *this;
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    /// substitution v -> v^{-1}
    Laurent bar() const {
        Laurent r;
        for (const auto& [e, c] : coef_) r.coef_[-e] = c;
        return r;
    }

    Rational eval_at_one() const {
        Rational s(0);
        for (const auto& [e, c] : coef_) s += c;
        return s;
    }

    double eval_double(double x) const {
        double s = 0;
        for (const auto& [e, c] : coef_) s += c.get_d() * std::pow(x, static_cast<double>(e));
        return s;
    }

    /// Exact division; throws if the divisor does not divide exactly.
    Laurent divide_exact(const Laurent& d) const;

    std::string to_string() const;
    static Laurent parse(const std::string& text);

private:
    void add_term(long e, const Rational& c) {
        auto it = coef_.find(e);
        if (it == coef_.end()) {
            if (c != 0) coef_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coef_.erase(it);
        }
    }

    std::map<long, Rational> coef_;
};

namespace detail {

// Dense ordinary polynomial helpers used for exact division and gcd.
using DensePoly = std::vector<Rational>; // coefficient of v^i at index i

inline void trim(DensePoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline DensePoly to_dense(const Laurent& p, long shift) {
    DensePoly d;
    if (p.is_zero()) return d;
    d.assign(static_cast<size_t>(p.max_exp() - shift) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) d[static_cast<size_t>(e - shift)] = c;
    return d;
}

inline Laurent from_dense(const DensePoly& d, long shift) {
    Laurent p;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) p += Laurent::monomial(d[i], static_cast<long>(i) + shift);
    return p;
}

// Euclidean division over Q[v]; returns {quotient, remainder}.
inline std::pair<DensePoly, DensePoly> divmod(DensePoly num, const DensePoly& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    DensePoly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational lead = den.back();
    while (num.size() >= den.size()) {
        Rational f = num.back() / lead;
        size_t off = num.size() - den.size();
        quot[off] = f;
        for (size_t i = 0; i < den.size(); ++i) num[off + i] -= f * den[i];
        trim(num);
        if (num.empty()) break;
        if (num.size() >= den.size() && num.back() == 0) trim(num);
    }
    trim(quot);
    return {quot, num};
}

inline DensePoly make_monic(DensePoly p) {
    trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline DensePoly gcd(DensePoly a, DensePoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

} // namespace detail

inline Laurent Laurent::divide_exact(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return zero();
    long ns = min_exp(), ds = d.min_exp();
    auto num = detail::to_dense(*this, ns);
    auto den = detail::to_dense(d, ds);
    auto [q, r] = detail::divmod(num, den);
    if (!r.empty()) throw std::domain_error("non-exact Laurent division");
    return detail::from_dense(q, ns - ds);
}

// Canonical rendering: terms in decreasing exponent order, e.g. "v^2 + 1 + v^-2".
inline std::string Laurent::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
        const long e = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg) c = -c;
        if (e == 0) {
            out << c.get_str();
        } else {
            if (c != 1) out << c.get_str() << "*";
            out << "v";
            if (e != 1) out << "^" << e;
        }
        first = false;
    }
    return out.str();
}

inline Laurent Laurent::parse(const std::string& text) {
    Laurent result;
    size_t i = 0;
    const size_t n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < n && text.compare(i, 1, "0") == 0 && i + 1 == n) return result;
    bool first = true;
    while (i < n) {
        skip_ws();
        int sign = 1;
        if (!first || text[i] == '+' || text[i] == '-') {
            if (i >= n || (text[i] != '+' && text[i] != '-'))
                throw std::invalid_argument("expected '+' or '-' in polynomial: " + text);
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        }
        first = false;
        // optional coefficient
        Rational coef(1);
        bool have_coef = false;
        if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            size_t j = i;
            while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
            coef = Rational(text.substr(i, j - i));
            coef.canonicalize();
            i = j;
            have_coef = true;
            skip_ws();
            if (i < n && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        long exp = 0;
        if (i < n && text[i] == 'v') {
            ++i;
            exp = 1;
            if (i < n && text[i] == '^') {
                ++i;
                size_t j = i;
                if (j < n && text[j] == '-') ++j;
                while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                exp = std::stol(text.substr(i, j - i));
                i = j;
            }
        } else if (!have_coef) {
            throw std::invalid_argument("malformed polynomial term in: " + text);
        }
        result += Laurent::monomial(sign * coef, exp);
        skip_ws();
    }
    return result;
}

} // namespace ihall
