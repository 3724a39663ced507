#pragma once

#include <gmpxx.h>

#include <string>

namespace qshuffle {

// Exact arbitrary-precision rational, backed by GMP. mpq_class keeps values
// canonical (gcd(num, den) = 1, den >= 1, zero as 0/1) under arithmetic;
// only raw two-integer construction needs an explicit canonicalize, which
// make_rational takes care of.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return r == 0; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= static_cast<long>(k);
    return f;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

} // namespace qshuffle
