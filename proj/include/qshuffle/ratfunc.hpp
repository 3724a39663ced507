#pragma once

#include "qshuffle/laurent.hpp"

namespace qshuffle {

// Quotient of two Laurent polynomials. Equality is decided by
// cross-multiplication; there is no gcd normalization (multivariate gcd is a
// non-goal), only cheap monomial/exact-division simplification.
class RatFunc {
public:
    RatFunc() : num_(), den_(LaurentPoly::one()) {}
    explicit RatFunc(LaurentPoly n) : num_(std::move(n)), den_(LaurentPoly::one()) {}
    explicit RatFunc(Rational c) : num_(LaurentPoly(std::move(c))), den_(LaurentPoly::one()) {}
    RatFunc(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw MathError("RatFunc: zero denominator");
        simplify();
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw MathError("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    bool is_one() const { return num_ == den_; }

    std::string str(const VarNamer& namer = q_var_name) const {
        if (den_.is_one()) return num_.str(namer);
        return "(" + num_.str(namer) + ") / (" + den_.str(namer) + ")";
    }

private:
    void simplify() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        if (auto q = poly_divide_exact(num_, den_)) {
            num_ = *q;
            den_ = LaurentPoly::one();
            return;
        }
        // Pull out the denominator's monomial content (always invertible).
        Monomial shift = detail::content_shift(den_);
        if (!shift.trivial()) {
            Monomial inv = shift.inverse();
            LaurentPoly n, d;
            for (const auto& [m, c] : num_.terms()) n.add_term(m * inv, c);
            for (const auto& [m, c] : den_.terms()) d.add_term(m * inv, c);
            num_ = std::move(n);
            den_ = std::move(d);
        }
    }

    LaurentPoly num_, den_;
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }

} // namespace qshuffle
