#pragma once

#include <optional>
#include <vector>

#include "qshuffle/modp.hpp"
#include "qshuffle/rational.hpp"

namespace qshuffle {

// Exact rational nullspace. The fast path computes the nullspace modulo a
// prime, lifts it through CRT + rational reconstruction, and then certifies:
// every lifted vector is verified against the exact matrix, and since
// rank mod p can only drop, nullity_p >= nullity_Q >= #verified = nullity_p
// pins the dimension. Reconstruction failures add primes; a stubborn input
// falls back to plain fraction-free elimination over Q.

using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

namespace detail {

inline bool rational_reconstruct(const Integer& r, const Integer& m, Rational& out) {
    // Wang's algorithm: find p/q = r mod m with |p|, q <= sqrt(m/2).
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
    Integer a = m, b = r % m;
    if (b < 0) b += m;
    Integer x0 = 0, x1 = 1;
    while (b > bound) {
        Integer q = a / b;
        Integer t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
    }
    if (x1 == 0) return false;
    Integer den = x1 < 0 ? Integer(-x1) : x1;
    Integer num = x1 < 0 ? Integer(-b) : b;
    if (den > bound) return false;
    if (gcd(num, den) != 1) return false;
    out = make_rational(num, den);
    return true;
}

// Nullspace basis mod p in the canonical reduced-echelon convention: one
// vector per free column, 1 at the free column, entries at pivot columns.
struct ModNullspace {
    std::vector<int> free_cols;
    std::vector<std::vector<modp::u64>> vectors; // one per free col, full length
};

inline ModNullspace nullspace_mod(const std::vector<std::vector<modp::u64>>& a_in,
                                  std::size_t rows, std::size_t cols, modp::u64 p) {
    std::vector<std::vector<modp::u64>> a = a_in;
    std::vector<int> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        modp::u64 inv = modp::invmod(a[r][c], p);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = modp::mulmod(a[r][j], inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            modp::u64 f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = modp::submod(a[i][j], modp::mulmod(f, a[r][j], p), p);
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    ModNullspace ns;
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivot_col_of_row) is_pivot[c] = 1;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) ns.free_cols.push_back(static_cast<int>(c));
    for (int f : ns.free_cols) {
        std::vector<modp::u64> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) {
            modp::u64 x = a[i][f];
            if (x != 0) v[pivot_col_of_row[i]] = p - x;
        }
        ns.vectors.push_back(std::move(v));
    }
    return ns;
}

} // namespace detail

// Plain exact nullspace over Q (fallback path; also the small-case oracle).
inline std::vector<RatVector> kernel_basis_exact(const RatMatrix& m_in) {
    RatMatrix a = m_in;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivot_col_of_row) is_pivot[c] = 1;
    std::vector<RatVector> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
            v[pivot_col_of_row[i]] = -a[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

inline bool matrix_kills(const RatMatrix& m, const RatVector& v) {
    for (const auto& row : m) {
        Rational acc(0);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) acc += row[j] * v[j];
        if (acc != 0) return false;
    }
    return true;
}

inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    if (rows == 0 || cols == 0) return {};
    if (rows * cols <= 400) return kernel_basis_exact(m);

    // Integer matrix: clear row denominators.
    std::vector<std::vector<Integer>> z(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Integer lcm = 1;
        for (const auto& x : m[i]) {
            Integer d(x.get_den());
            lcm = lcm / gcd(lcm, d) * d;
        }
        for (std::size_t j = 0; j < cols; ++j)
            z[i][j] = Integer(m[i][j].get_num()) * (lcm / Integer(m[i][j].get_den()));
    }

    modp::u64 p0 = (1ULL << 61) - 1;
    std::vector<modp::u64> primes{p0};
    detail::ModNullspace base;
    {
        std::vector<std::vector<modp::u64>> ap(rows, std::vector<modp::u64>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) ap[i][j] = modp::from_integer(z[i][j], p0);
        base = detail::nullspace_mod(ap, rows, cols, p0);
    }
    if (base.vectors.empty()) {
        // Nullity 0 mod p implies nullity 0 over Q (rank can only drop mod p).
        return {};
    }

    // CRT-lift entries until rational reconstruction verifies.
    std::vector<std::vector<Integer>> residue(base.vectors.size(),
                                              std::vector<Integer>(cols));
    Integer modulus(static_cast<unsigned long>(p0));
    for (std::size_t k = 0; k < base.vectors.size(); ++k)
        for (std::size_t j = 0; j < cols; ++j)
            residue[k][j] = Integer(static_cast<unsigned long>(base.vectors[k][j]));

    modp::u64 next = p0 + 2;
    for (int round = 0; round < 24; ++round) {
        bool ok = true;
        std::vector<RatVector> out(base.vectors.size(), RatVector(cols, Rational(0)));
        for (std::size_t k = 0; k < base.vectors.size() && ok; ++k)
            for (std::size_t j = 0; j < cols && ok; ++j) {
                Rational val;
                if (!detail::rational_reconstruct(residue[k][j], modulus, val)) ok = false;
                else out[k][j] = val;
            }
        if (ok) {
            bool verified = true;
            for (const auto& v : out) verified = verified && matrix_kills(m, v);
            if (verified) return out;
        }
        // Add another prime. A prime that disagrees on the free-column set
        // saw a rank drop; skip it.
        detail::ModNullspace ns;
        modp::u64 p;
        while (true) {
            p = modp::next_prime(next);
            next = p + 2;
            std::vector<std::vector<modp::u64>> ap(rows, std::vector<modp::u64>(cols));
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    ap[i][j] = modp::from_integer(z[i][j], p);
            ns = detail::nullspace_mod(ap, rows, cols, p);
            if (ns.free_cols == base.free_cols) break;
            if (ns.free_cols.size() < base.free_cols.size()) {
                // This prime sees a smaller nullity: p0 was unlucky; restart.
                base = ns;
                primes = {p};
                modulus = Integer(static_cast<unsigned long>(p));
                for (std::size_t k = 0; k < base.vectors.size(); ++k)
                    for (std::size_t j = 0; j < cols; ++j)
                        residue[k][j] =
                            Integer(static_cast<unsigned long>(base.vectors[k][j]));
                continue;
            }
        }
        Integer pz(static_cast<unsigned long>(p));
        residue.resize(base.vectors.size(), std::vector<Integer>(cols));
        for (std::size_t k = 0; k < base.vectors.size(); ++k)
            for (std::size_t j = 0; j < cols; ++j) {
                // CRT combine residue (mod modulus) with ns value (mod p).
                modp::u64 r2 = ns.vectors[k][j];
                Integer cur = residue[k][j];
                modp::u64 curp = modp::from_integer(cur, p);
                modp::u64 diff = modp::submod(r2, curp, p);
                modp::u64 minv = modp::from_integer(modulus, p);
                modp::u64 t = modp::mulmod(diff, modp::invmod(minv, p), p);
                residue[k][j] = cur + modulus * Integer(static_cast<unsigned long>(t));
            }
        modulus *= pz;
        primes.push_back(p);
    }
    // Modular lifting failed; do it the slow, certain way.
    return kernel_basis_exact(m);
}

inline std::size_t rank_exact(const RatMatrix& m) {
    if (m.empty()) return 0;
    return m[0].size() - kernel_basis(m).size();
}

} // namespace qshuffle
