#pragma once

#include <set>
#include <vector>

#include "qshuffle/partial.hpp"
#include "qshuffle/qparams.hpp"
#include "qshuffle/word.hpp"

namespace qshuffle {

// The pairing matrix on an ordered word basis:
//
//   entries[a][b] = (d_{a_n} o ... o d_{a_1}) e_{basis[b]} |_0
//
// i.e. the row word supplies the derivative string (first letter acting
// first), the column word the monomial. On the length-2 basis (e1.e2, e2.e1)
// this gives [[1, q12], [q21, 1]], the anchor that pins the paper's
// composition-order convention. Right-kernel vectors of a specialized SForm
// are exactly the constants of that degree.
template <class C>
struct SForm {
    std::vector<Word> basis;
    std::vector<std::vector<C>> entries;
    QParams<C> params;

    std::size_t dim() const { return basis.size(); }
};

template <class C>
C sform_entry(const Word& row, const Word& col, const QParams<C>& q) {
    return apply_partial_word(row, NcPoly<C>(col), q).order0_term();
}

template <class C>
SForm<C> build_sform(std::vector<Word> basis, const QParams<C>& q) {
    SForm<C> m;
    m.basis = std::move(basis);
    m.params = q;
    m.entries.resize(m.basis.size());
    for (std::size_t a = 0; a < m.basis.size(); ++a) {
        m.entries[a].resize(m.basis.size());
        for (std::size_t b = 0; b < m.basis.size(); ++b)
            m.entries[a][b] = sform_entry(m.basis[a], m.basis[b], q);
    }
    return m;
}

inline void require_multilinear_degree(const std::vector<int>& G) {
    std::set<int> s(G.begin(), G.end());
    if (s.size() != G.size())
        throw RepeatedIndex("degree set has a repeated generator index");
    if (G.empty()) throw RangeError("degree set is empty");
}

// S_G on the full multilinear word basis (lexicographic permutations of G).
template <class C>
SForm<C> build_smatrix(const std::vector<int>& G, const QParams<C>& q) {
    require_multilinear_degree(G);
    SForm<C> m = build_sform(multilinear_words(G), q);
    if constexpr (std::is_same_v<C, LaurentPoly>) {
        // Every entry of a multilinear S_G is a single monomial; the
        // recursion guarantees it, and downstream machinery relies on it.
        if (G.size() <= 5) {
            for (const auto& row : m.entries)
                for (const auto& e : row)
                    if (!e.is_monomial())
                        throw MathError("build_smatrix: non-monomial entry");
        }
    }
    return m;
}

} // namespace qshuffle
