#pragma once

#include "qshuffle/ncpoly.hpp"
#include "qshuffle/qparams.hpp"
#include "qshuffle/word.hpp"

namespace qshuffle {

// The q-derivative operators defined by
//
//   d_i(e_j x) = delta_ij x + q_ij e_j d_i(x),   d_i(1) = 0.
//
// Unfolding the recursion on a word gives the closed form used here:
// d_i picks out each occurrence of e_i, removing it and multiplying by the
// q_ij of every letter passed on the way in. The recursion itself is
// exercised directly by the property tests.

template <class C>
NcPoly<C> apply_partial_word_term(int i, const Word& w, const QParams<C>& q) {
    NcPoly<C> out;
    std::size_t last = w.letters.size();
    for (std::size_t p = w.letters.size(); p-- > 0;)
        if (w.letters[p] == i) {
            last = p;
            break;
        }
    if (last == w.letters.size()) return out;
    // Only letters up to the final occurrence contribute prefix factors, so
    // diagonal parameters q_ii are consulted just for genuinely repeated i.
    C prefix(1);
    for (std::size_t p = 0; p <= last; ++p) {
        int letter = w.letters[p];
        if (letter == i) out.add_term(w.without_position(p), prefix);
        if (p < last) prefix = prefix * q.q(i, letter);
    }
    return out;
}

template <class C>
NcPoly<C> apply_partial(int i, const NcPoly<C>& x, const QParams<C>& q) {
    if (i < 1 || i > q.n())
        throw IndexOutOfRange("apply_partial: index " + std::to_string(i));
    NcPoly<C> out;
    for (const auto& [w, c] : x.terms()) {
        NcPoly<C> dw = apply_partial_word_term(i, w, q);
        for (const auto& [w2, c2] : dw.terms()) out.add_term(w2, c * c2);
    }
    return out;
}

// Composition d_{j_k} o ... o d_{j_1}: js[0] acts first. Together with
// build_smatrix's row convention this reproduces the printed 2x2 matrix
// [[1, q12], [q21, 1]]; a dedicated convention test locks that in.
template <class C>
NcPoly<C> apply_partial_word(const Word& js, const NcPoly<C>& x, const QParams<C>& q) {
    NcPoly<C> acc = x;
    for (int j : js.letters) {
        if (acc.is_zero()) break;
        acc = apply_partial(j, acc, q);
    }
    return acc;
}

// True iff d_i x = 0 for every i = 1..n. x must have no order-0 term.
template <class C>
bool is_constant(const NcPoly<C>& x, const QParams<C>& q) {
    if (x.has_order0_term())
        throw HasConstantTerm("is_constant: polynomial has a term of order 0");
    for (int i = 1; i <= q.n(); ++i)
        if (!apply_partial(i, x, q).is_zero()) return false;
    return true;
}

} // namespace qshuffle
