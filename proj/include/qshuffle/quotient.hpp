#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <vector>

#include "qshuffle/constraints.hpp"
#include "qshuffle/ncpoly.hpp"
#include "qshuffle/qparams.hpp"
#include "qshuffle/word.hpp"

namespace qshuffle {

// Word basis of a quotient algebra B_G(Q) together with the dimension of the
// degree-G part of the ideal it quotients away.
struct QuotientBasis {
    std::vector<int> G;
    std::vector<Word> words;
    std::size_t ideal_dim = 0;
};

namespace detail {

inline bool pair_in(const std::vector<std::vector<int>>& pairs, int a, int b) {
    int lo = std::min(a, b), hi = std::max(a, b);
    for (const auto& p : pairs)
        if (p[0] == lo && p[1] == hi) return true;
    return false;
}

} // namespace detail

// For pair constraints the relations are e_i e_j = q_ji e_j e_i, so two
// words are identified (up to scalar) exactly when they differ by swaps of
// adjacent constrained letters. Plain descent rewriting is not confluent
// when constrained pairs overlap (e_c e_b e_a reduces two ways), so normal
// forms are taken as the lexicographically least word of each swap class;
// the scalar relating a word to its normal form is path-independent because
// sigma_ab = 1 on every constrained pair.
template <class C>
std::pair<C, Word> normal_form(const Word& w, const std::vector<std::vector<int>>& pairs,
                               const QParams<C>& q) {
    std::map<Word, C> scalar; // value s with  word = s * (start word class map)
    scalar[w] = C(1);
    std::deque<Word> queue{w};
    while (!queue.empty()) {
        Word cur = queue.front();
        queue.pop_front();
        C s = scalar.at(cur);
        for (std::size_t t = 0; t + 1 < cur.letters.size(); ++t) {
            int x = cur.letters[t], y = cur.letters[t + 1];
            if (!detail::pair_in(pairs, x, y)) continue;
            Word next = cur;
            std::swap(next.letters[t], next.letters[t + 1]);
            // cur = e..xy.. and  e_x e_y = q_yx e_y e_x, so cur = q_yx * next.
            C factor = q.q(y, x);
            C ns = s * factor;
            auto it = scalar.find(next);
            if (it == scalar.end()) {
                scalar[next] = ns;
                queue.push_back(next);
            } else if (!(it->second == ns)) {
                throw MathError("normal_form: path-dependent scalar (sigma != 1?)");
            }
        }
    }
    // Invariant: w = scalar[v] * v in the quotient, for every visited v.
    Word rep = w;
    for (const auto& [v, s] : scalar)
        if (v < rep) rep = v;
    return {scalar.at(rep), rep};
}

inline bool words_identified(const Word& a, const Word& b,
                             const std::vector<std::vector<int>>& pairs) {
    std::deque<Word> queue{a};
    std::map<Word, char> seen{{a, 1}};
    while (!queue.empty()) {
        Word cur = queue.front();
        queue.pop_front();
        if (cur == b) return true;
        for (std::size_t t = 0; t + 1 < cur.letters.size(); ++t) {
            if (!detail::pair_in(pairs, cur.letters[t], cur.letters[t + 1])) continue;
            Word next = cur;
            std::swap(next.letters[t], next.letters[t + 1]);
            if (seen.emplace(next, 1).second) queue.push_back(next);
        }
    }
    return false;
}

// Basis of B_G(Q) for pure pair constraints: one representative (the lex
// least word) per swap class. For non-overlapping constrained pairs these
// are exactly the words with no adjacent reversed constrained pair.
inline QuotientBasis quadratic_quotient_basis(const std::vector<int>& G,
                                              const std::vector<std::vector<int>>& pairs) {
    QuotientBasis out;
    out.G = G;
    auto all = multilinear_words(G);
    std::map<Word, char> claimed;
    for (const auto& w : all) {
        if (claimed.count(w)) continue;
        // w is the lex-least of its class: words are scanned in lex order.
        out.words.push_back(w);
        std::deque<Word> queue{w};
        claimed[w] = 1;
        while (!queue.empty()) {
            Word cur = queue.front();
            queue.pop_front();
            for (std::size_t t = 0; t + 1 < cur.letters.size(); ++t) {
                if (!detail::pair_in(pairs, cur.letters[t], cur.letters[t + 1])) continue;
                Word next = cur;
                std::swap(next.letters[t], next.letters[t + 1]);
                if (claimed.emplace(next, 1).second) queue.push_back(next);
            }
        }
    }
    out.ideal_dim = all.size() - out.words.size();
    return out;
}

} // namespace qshuffle
