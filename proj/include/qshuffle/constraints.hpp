#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "qshuffle/laurent.hpp"
#include "qshuffle/qparams.hpp"

namespace qshuffle {

// A set Q of index subsets S of {1..n}, each meaning sigma_S = 1.
struct ConstraintSet {
    int n = 0;
    std::vector<std::vector<int>> subsets;

    ConstraintSet() = default;
    ConstraintSet(int n_, std::vector<std::vector<int>> ss) : n(n_), subsets(std::move(ss)) {
        normalize();
    }

    void normalize() {
        for (auto& s : subsets) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (s.size() < 2) throw SubsetTooSmall("constraint subset needs >= 2 indices");
            if (s.front() < 1 || s.back() > n)
                throw IndexOutOfRange("constraint subset outside 1..n");
        }
        std::sort(subsets.begin(), subsets.end(), size_lex_less);
        subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
    }

    static bool size_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }

    bool empty() const { return subsets.empty(); }
    bool contains(const std::vector<int>& s) const {
        return std::find(subsets.begin(), subsets.end(), s) != subsets.end();
    }
    bool pairs_only() const {
        for (const auto& s : subsets)
            if (s.size() != 2) return false;
        return true;
    }
    std::vector<std::vector<int>> pair_list() const {
        std::vector<std::vector<int>> out;
        for (const auto& s : subsets)
            if (s.size() == 2) out.push_back(s);
        return out;
    }

    // Constraints living inside T (needed when deciding degree-T questions).
    ConstraintSet restricted_to(const std::vector<int>& T) const {
        std::set<int> ts(T.begin(), T.end());
        ConstraintSet out;
        out.n = n;
        for (const auto& s : subsets) {
            bool inside = true;
            for (int i : s) inside = inside && ts.count(i);
            if (inside) out.subsets.push_back(s);
        }
        return out;
    }

    // A pair {a,b} is free when no constraint subset contains both ends.
    bool pair_free(int a, int b) const {
        for (const auto& s : subsets) {
            bool ha = std::find(s.begin(), s.end(), a) != s.end();
            bool hb = std::find(s.begin(), s.end(), b) != s.end();
            if (ha && hb) return false;
        }
        return true;
    }

    // Lexicographically smallest free pair, if any.
    std::optional<std::pair<int, int>> first_free_pair() const {
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (pair_free(a, b)) return std::make_pair(a, b);
        return std::nullopt;
    }

    friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
    friend bool operator<(const ConstraintSet& a, const ConstraintSet& b) {
        if (a.n != b.n) return a.n < b.n;
        return std::lexicographical_compare(a.subsets.begin(), a.subsets.end(),
                                            b.subsets.begin(), b.subsets.end(),
                                            size_lex_less);
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            if (i) s += ", ";
            s += subset_sigma_name(subsets[i]);
        }
        return s + "}";
    }
    static std::string subset_sigma_name(const std::vector<int>& s) {
        std::string out = "sigma";
        for (int i : s) out += std::to_string(i);
        return out;
    }
};

namespace detail {

// Solve prod = 1 for one variable of a multiplicative system. `value` maps
// each variable to its current monomial expression; returns false when no
// candidate variable occurs with exponent +-1.
inline bool eliminate_one(std::map<VarId, LaurentPoly>& value, const LaurentPoly& image,
                          const std::vector<VarId>& candidates) {
    auto [mono, coeff] = image.monomial_term();
    if (coeff != 1) throw InconsistentConstraints("sigma image has a non-unit coefficient");
    for (VarId v : candidates) {
        auto it = value.find(v);
        if (it == value.end() || !(it->second == LaurentPoly::variable(v)))
            continue; // already eliminated
        int k = mono.exponent_of(v);
        if (k != 1 && k != -1) continue;
        // image = rest * v^k = 1  =>  v = rest^(-1/k)
        Monomial rest = mono * Monomial(v, k).inverse();
        LaurentPoly solution(k == 1 ? rest.inverse() : rest);
        std::map<VarId, LaurentPoly> sub{{v, solution}};
        for (auto& [w, val] : value) val = poly_substitute(val, sub);
        value[v] = solution;
        return true;
    }
    return false;
}

} // namespace detail

// Impose sigma_S = 1 for each S in Q by eliminating one q variable per
// constraint (preferring the pair of the two smallest indices of S). All
// other parameters remain free symbols; eliminated values are Laurent
// monomials in the free ones.
inline QParams<LaurentPoly> eliminate_constraints(const QParams<LaurentPoly>& q,
                                                  const ConstraintSet& Q) {
    std::map<VarId, LaurentPoly> value;
    for (const auto& [ij, val] : q.values()) value[VarId{ij.first, ij.second}] = val;

    for (const auto& S : Q.subsets) {
        // Current image of sigma_S under the substitutions so far.
        LaurentPoly image = LaurentPoly::one();
        for (int i : S)
            for (int j : S)
                if (i != j) image *= value.at(VarId{i, j});
        if (image.is_one()) continue; // already implied
        if (image.is_constant())
            throw InconsistentConstraints("sigma_" + ConstraintSet::subset_sigma_name(S) +
                                          " forced to a constant != 1");
        std::vector<VarId> candidates;
        for (std::size_t a = 0; a < S.size(); ++a)
            for (std::size_t b = 0; b < S.size(); ++b)
                if (a != b) candidates.push_back(VarId{S[a], S[b]});
        std::sort(candidates.begin(), candidates.end());
        if (!detail::eliminate_one(value, image, candidates))
            throw InconsistentConstraints("no eliminable variable for " +
                                          ConstraintSet::subset_sigma_name(S));
    }

    QParams<LaurentPoly> out(q.n());
    for (const auto& [ij, unused] : q.values())
        out.set(ij.first, ij.second, value.at(VarId{ij.first, ij.second}));
    return out;
}

// The same elimination carried out in the sigma-ring, where VarId{u,v} with
// u < v stands for sigma_uv. Used by the determinant engine; must agree with
// the q-level elimination (tested).
struct SigmaElimination {
    int n = 0;
    std::map<VarId, LaurentPoly> value; // every pair var -> monomial expression

    LaurentPoly image_of(const std::vector<int>& subset) const {
        LaurentPoly acc = LaurentPoly::one();
        for (std::size_t a = 0; a < subset.size(); ++a)
            for (std::size_t b = a + 1; b < subset.size(); ++b) {
                int u = std::min(subset[a], subset[b]);
                int v = std::max(subset[a], subset[b]);
                acc *= value.at(VarId{u, v});
            }
        return acc;
    }

    LaurentPoly substitute(const Monomial& m) const {
        LaurentPoly acc = LaurentPoly::one();
        for (const auto& [v, e] : m.factors()) acc *= value.at(v).pow(e);
        return acc;
    }
};

inline SigmaElimination sigma_eliminate(const ConstraintSet& Q) {
    SigmaElimination elim;
    elim.n = Q.n;
    for (int u = 1; u <= Q.n; ++u)
        for (int v = u + 1; v <= Q.n; ++v)
            elim.value[VarId{u, v}] = LaurentPoly::variable(VarId{u, v});

    for (const auto& S : Q.subsets) {
        LaurentPoly image = elim.image_of(S);
        if (image.is_one()) continue;
        if (image.is_constant())
            throw InconsistentConstraints("sigma image forced constant != 1");
        std::vector<VarId> candidates;
        for (std::size_t a = 0; a < S.size(); ++a)
            for (std::size_t b = a + 1; b < S.size(); ++b)
                candidates.push_back(VarId{S[a], S[b]});
        std::sort(candidates.begin(), candidates.end());
        if (!detail::eliminate_one(elim.value, image, candidates))
            throw InconsistentConstraints("no eliminable sigma variable");
    }
    return elim;
}

} // namespace qshuffle
