#pragma once

#include <vector>

#include "qshuffle/laurent.hpp"
#include "qshuffle/ratfunc.hpp"
#include "qshuffle/smatrix.hpp"

namespace qshuffle {

namespace detail {

inline LaurentPoly exact_quotient(const LaurentPoly& num, const LaurentPoly& den) {
    auto q = poly_divide_exact(num, den);
    if (!q)
        throw MathError("bareiss: exact division failed (non-polynomial pivot ratio)");
    return *q;
}

inline Rational exact_quotient(const Rational& num, const Rational& den) {
    return num / den;
}

} // namespace detail

// Fraction-free (Bareiss) determinant over an exact ring. Intermediate
// entries are minors of the input, so every division is exact. Fine for the
// small matrices it is used on; the large structured determinants go through
// the certified grid engine instead (see gridcert.hpp).
template <class C>
C det_exact(std::vector<std::vector<C>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DimensionMismatch("det_exact: matrix not square");
    if (n == 0) return C(1);

    int sign = 1;
    C prev_pivot(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && qshuffle::is_zero(m[piv][k])) ++piv;
        if (piv == n) return C(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                C num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = detail::exact_quotient(num, prev_pivot);
            }
            m[i][k] = C(0);
        }
        prev_pivot = m[k][k];
    }
    C det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

template <class C>
C det_exact(const SForm<C>& m) {
    return det_exact(m.entries);
}

namespace detail {

// Minor of m with row r and column c removed.
template <class C>
std::vector<std::vector<C>> strike(const std::vector<std::vector<C>>& m, std::size_t r,
                                   std::size_t c) {
    std::vector<std::vector<C>> out;
    out.reserve(m.size() - 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r) continue;
        std::vector<C> row;
        row.reserve(m.size() - 1);
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != c) row.push_back(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace detail

// Exact inverse over the rational-function field, via adjugate / determinant.
// Throws SingularMatrix when det vanishes identically.
inline std::vector<std::vector<RatFunc>> t_matrix(const SForm<LaurentPoly>& m) {
    const std::size_t n = m.dim();
    LaurentPoly det = det_exact(m);
    if (det.is_zero()) throw SingularMatrix("t_matrix: determinant is identically zero");
    std::vector<std::vector<RatFunc>> inv(n, std::vector<RatFunc>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            LaurentPoly cof = det_exact(detail::strike(m.entries, j, i));
            if ((i + j) % 2 == 1) cof = -cof;
            inv[i][j] = RatFunc(std::move(cof), det);
        }
    return inv;
}

// Row i of the inverse contracted against the basis words:
//   t_i = sum_j (S^-1)_{j,i} e_j,
// the element satisfying d_k t_i = delta_{k,i_1} t_{tail(i)}.
inline NcPoly<RatFunc> t_row(const SForm<LaurentPoly>& m,
                             const std::vector<std::vector<RatFunc>>& inv,
                             std::size_t i) {
    NcPoly<RatFunc> out;
    for (std::size_t j = 0; j < m.dim(); ++j) out.add_term(m.basis[j], inv[j][i]);
    return out;
}

} // namespace qshuffle
