#pragma once

#include "ihall/census.hpp"
#include "ihall/quad_ext.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ihall {

/// Basis symbol [M] * [E_1]^{a_1} * [E_2]^{a_2} * ... : a nilpotent module
/// class over the base path algebra together with an integer exponent per
/// vertex for the generalized-simple factors, taken in the fixed vertex
/// order. Exponents may be negative (the classes are invertible after
/// localization).
struct HallSymbol {
    DimVector mdim;
    int mclass = 0;
    std::vector<long> alpha;

    friend bool operator==(const HallSymbol& a, const HallSymbol& b) {
        return a.mdim == b.mdim && a.mclass == b.mclass && a.alpha == b.alpha;
    }
    friend bool operator<(const HallSymbol& a, const HallSymbol& b) {
        if (a.mdim != b.mdim) return a.mdim < b.mdim;
        if (a.mclass != b.mclass) return a.mclass < b.mclass;
        return a.alpha < b.alpha;
    }
};

/// Finite linear combination of basis symbols with coefficients in Q(sqrt q).
class HallElement {
public:
    HallElement() = default;

    static HallElement single(const HallSymbol& s, const QuadExt& c) {
        HallElement e;
        e.add(s, c);
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<HallSymbol, QuadExt>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    void add(const HallSymbol& s, const QuadExt& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            terms_.emplace(s, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend HallElement operator+(const HallElement& x, const HallElement& y) {
        HallElement r = x;
        for (const auto& [s, c] : y.terms_) r.add(s, c);
        return r;
    }
    friend HallElement operator-(const HallElement& x, const HallElement& y) {
        HallElement r = x;
        for (const auto& [s, c] : y.terms_) r.add(s, -c);
        return r;
    }
    HallElement& operator+=(const HallElement& y) { return *this = *this + y; }
    HallElement& operator-=(const HallElement& y) { return *this = *this - y; }

    friend HallElement operator*(const QuadExt& c, const HallElement& x) {
        HallElement r;
        for (const auto& [s, coeff] : x.terms_) r.add(s, c * coeff);
        return r;
    }

    friend bool operator==(const HallElement& x, const HallElement& y) {
        return x.terms_ == y.terms_;
    }

    std::string to_string(const std::vector<std::string>& vertex_names) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [s, c] : terms_) {
            if (!first) out << " + ";
            first = false;
            out << "(" << c.to_string() << ")*[" << dim_to_string(s.mdim) << "#" << s.mclass << "]";
            for (size_t i = 0; i < s.alpha.size(); ++i)
                if (s.alpha[i]) {
                    out << "*[E_" << vertex_names[i] << "]";
                    if (s.alpha[i] != 1) out << "^" << s.alpha[i];
                }
        }
        return out.str();
    }

private:
    std::map<HallSymbol, QuadExt> terms_;
};

} // namespace ihall
