#pragma once

#include <cstdint>
#include <vector>

#include "qshuffle/errors.hpp"
#include "qshuffle/rational.hpp"

namespace qshuffle {

// Prime-field arithmetic on 61..62-bit primes, used by the certified grid
// determinant engine. All routines are deterministic.
namespace modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline u64 invmod(u64 a, u64 p) {
    if (a % p == 0) throw MathError("invmod: zero");
    return powmod(a % p, p - 2, p);
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 b : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % b == 0) return n == b;
    }
    u64 d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (u64 b : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int s = 1; s < r; ++s) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline u64 next_prime(u64 n) {
    while (!is_prime(n)) ++n;
    return n;
}

inline u64 from_integer(const Integer& z, u64 p) {
    Integer m = z % Integer(static_cast<unsigned long>(p));
    if (m < 0) m += Integer(static_cast<unsigned long>(p));
    return m.get_ui();
}

inline u64 from_rational(const Rational& r, u64 p) {
    u64 num = from_integer(Integer(r.get_num()), p);
    u64 den = from_integer(Integer(r.get_den()), p);
    return mulmod(num, invmod(den, p), p);
}

// Determinant of a dense matrix over F_p (fraction-free with row pivoting; a
// fully zero pivot column short-circuits to zero).
inline u64 det(std::vector<std::vector<u64>> m, u64 p) {
    const std::size_t n = m.size();
    if (n == 0) return 1 % p;
    bool negate = false;
    u64 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            negate = !negate;
        }
        u64 inv_prev = invmod(prev, p);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                u64 a = mulmod(m[i][j], m[k][k], p);
                u64 b = mulmod(m[i][k], m[k][j], p);
                m[i][j] = mulmod(submod(a, b, p), inv_prev, p);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    u64 d = m[n - 1][n - 1];
    return negate ? (p - d) % p : d;
}

// Lagrange interpolation through (x_i, y_i), distinct x_i. Returns the
// coefficient vector, lowest degree first.
inline std::vector<u64> interpolate(const std::vector<u64>& xs, const std::vector<u64>& ys,
                                    u64 p) {
    const std::size_t n = xs.size();
    std::vector<u64> coeffs(n, 0);
    std::vector<u64> basis; // running product prod (x - x_j), lowest first
    basis.push_back(1);
    // Newton form: iteratively add points.
    std::vector<u64> divided = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            u64 num = submod(divided[i], divided[i - 1], p);
            u64 den = submod(xs[i], xs[i - j], p);
            divided[i] = mulmod(num, invmod(den, p), p);
            if (i == j) break;
        }
    // Expand Newton basis.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < basis.size(); ++k)
            coeffs[k] = addmod(coeffs[k], mulmod(divided[j], basis[k], p), p);
        if (j + 1 < n) {
            u64 negx = (p - xs[j] % p) % p;
            basis.push_back(0);
            for (std::size_t k = basis.size() - 1; k > 0; --k)
                basis[k] = addmod(basis[k - 1], mulmod(basis[k], negx, p), p);
            basis[0] = mulmod(basis[0], negx, p);
        }
    }
    return coeffs;
}

// Polynomial division in F_p[t]; returns quotient when the division is
// exact, nullopt otherwise. Coefficients lowest-first.
inline std::optional<std::vector<u64>> divide_exact(std::vector<u64> num,
                                                    const std::vector<u64>& den, u64 p) {
    auto degree = [](const std::vector<u64>& f) {
        int d = -1;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] != 0) d = static_cast<int>(i);
        return d;
    };
    int dd = degree(den);
    if (dd < 0) throw MathError("modp::divide_exact: zero divisor");
    int dn = degree(num);
    if (dn < 0) return std::vector<u64>{};
    if (dn < dd) return std::nullopt;
    std::vector<u64> quot(dn - dd + 1, 0);
    u64 lead_inv = invmod(den[dd], p);
    for (int k = dn - dd; k >= 0; --k) {
        u64 c = mulmod(num[k + dd], lead_inv, p);
        quot[k] = c;
        if (c != 0)
            for (int j = 0; j <= dd; ++j)
                num[k + j] = submod(num[k + j], mulmod(c, den[j], p), p);
    }
    for (u64 c : num)
        if (c != 0) return std::nullopt;
    return quot;
}

} // namespace modp

// Balanced CRT lift of residues modulo two primes to an integer in
// (-p1*p2/2, p1*p2/2].
inline Integer crt_balanced(modp::u64 r1, modp::u64 p1, modp::u64 r2, modp::u64 p2) {
    Integer P1(static_cast<unsigned long>(p1)), P2(static_cast<unsigned long>(p2));
    Integer M = P1 * P2;
    // x = r1 + p1 * k, k = (r2 - r1) / p1 mod p2
    modp::u64 r1m = r1 % p2;
    modp::u64 k = modp::mulmod(modp::submod(r2 % p2, r1m, p2), modp::invmod(p1 % p2, p2), p2);
    Integer x = Integer(static_cast<unsigned long>(r1)) + P1 * Integer(static_cast<unsigned long>(k));
    if (2 * x > M) x -= M;
    return x;
}

} // namespace qshuffle
