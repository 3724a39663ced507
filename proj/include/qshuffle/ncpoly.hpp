#pragma once

#include <map>
#include <sstream>
#include <string>

#include "qshuffle/laurent.hpp"
#include "qshuffle/word.hpp"

namespace qshuffle {

namespace detail {
// Unqualified call point so the coefficient ring's is_zero is found by ADL
// at instantiation time (RatFunc is declared after this header).
template <class C>
bool is_zero_adl(const C& c) {
    return is_zero(c);
}
} // namespace detail

// Noncommutative polynomial: a finite Word -> coefficient map over an exact
// coefficient ring (Rational for specialized parameters, LaurentPoly for
// symbolic ones). No zero coefficients are stored.
template <class C>
class NcPoly {
public:
    using TermMap = std::map<Word, C>;

    NcPoly() = default;
    explicit NcPoly(const Word& w, C c = C(1)) {
        if (!detail::is_zero_adl(c)) terms_[w] = std::move(c);
    }

    static NcPoly generator(int i) { return NcPoly(Word({i})); }
    static NcPoly unit(C c = C(1)) { return NcPoly(Word{}, std::move(c)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Word& w, const C& c) {
        if (detail::is_zero_adl(c)) return;
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (detail::is_zero_adl(it->second)) terms_.erase(it);
        }
    }

    NcPoly& operator+=(const NcPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NcPoly& operator-=(const NcPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator-(const NcPoly& a) {
        NcPoly r;
        for (const auto& [w, c] : a.terms_) r.terms_[w] = -c;
        return r;
    }

    friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
        NcPoly r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) r.add_term(wa.concat(wb), ca * cb);
        return r;
    }

    NcPoly scaled(const C& c) const {
        NcPoly r;
        for (const auto& [w, coeff] : terms_) r.add_term(w, coeff * c);
        return r;
    }

    C coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? C(0) : it->second;
    }

    C order0_term() const { return coefficient(Word{}); }
    bool has_order0_term() const { return terms_.count(Word{}) != 0; }

    // Component of the fine grading (multiset of letters).
    NcPoly homogeneous_component(const std::multiset<int>& degree) const {
        NcPoly r;
        for (const auto& [w, c] : terms_)
            if (w.degree() == degree) r.add_term(w, c);
        return r;
    }

    friend bool operator==(const NcPoly& a, const NcPoly& b) {
        return a.terms_ == b.terms_;
    }

    std::string str(const VarNamer& namer = q_var_name) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << coeff_str(c, namer) << ")";
            if (!w.empty()) os << "*" << w.str();
        }
        return os.str();
    }

private:
    static std::string coeff_str(const Rational& c, const VarNamer&) {
        return to_string(c);
    }
    static std::string coeff_str(const LaurentPoly& c, const VarNamer& namer) {
        return c.str(namer);
    }

    TermMap terms_;
};

} // namespace qshuffle
