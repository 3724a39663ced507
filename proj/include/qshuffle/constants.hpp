#pragma once

#include <map>
#include <memory>
#include <vector>

#include "qshuffle/kernel.hpp"
#include "qshuffle/partial.hpp"
#include "qshuffle/quotient.hpp"
#include "qshuffle/smatrix.hpp"
#include "qshuffle/specialize.hpp"

namespace qshuffle {

// Constants of one degree at an exact specialization.
struct ConstantSpace {
    std::vector<int> degree;
    std::vector<NcPoly<Rational>> basis; // representatives over the quotient basis
    std::size_t primitive_dim = 0;

    std::size_t dim() const { return basis.size(); }
};

// Recursive engine: constants and ideal spans at a fixed specialization,
// degree by degree (lower degrees before anything that consumes them, which
// is the paper's non-increasing-dimension processing order). The cache is
// read-only once filled; all results are exact rationals.
class ConstantEngine {
public:
    explicit ConstantEngine(Specialization spec)
        : spec_(std::move(spec)), params_(spec_.params()) {}

    const Specialization& spec() const { return spec_; }
    const QParams<Rational>& params() const { return params_; }

    // All ideal vectors x * C * z at degree G, C a constant of a proper
    // subdegree.
    std::vector<NcPoly<Rational>> ideal_span(const std::vector<int>& G) {
        std::vector<NcPoly<Rational>> out;
        int n = static_cast<int>(G.size());
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            std::vector<int> D, rest;
            for (int i = 0; i < n; ++i)
                ((mask >> i) & 1 ? D : rest).push_back(G[i]);
            if (D.size() < 2) continue;
            const ConstantSpace& cs = constants(D);
            if (cs.basis.empty()) continue;
            auto outside = multilinear_words(rest);
            // all splits of `rest` into a left and a right word
            for (const auto& w : outside)
                for (std::size_t cut = 0; cut <= w.letters.size(); ++cut) {
                    Word x(std::vector<int>(w.letters.begin(), w.letters.begin() + cut));
                    Word z(std::vector<int>(w.letters.begin() + cut, w.letters.end()));
                    for (const auto& c : cs.basis)
                        out.push_back(NcPoly<Rational>(x) * c * NcPoly<Rational>(z));
                }
        }
        return out;
    }

    // Greedy lexicographic complement of the ideal at degree G: scan words in
    // lex order, keep those independent of the ideal plus the kept ones.
    QuotientBasis quotient_basis(const std::vector<int>& G) {
        auto it = basis_cache_.find(G);
        if (it != basis_cache_.end()) return it->second;

        auto words = multilinear_words(G);
        auto ideal = ideal_span(G);
        QuotientBasis qb;
        qb.G = G;

        std::map<Word, std::size_t> col;
        for (std::size_t j = 0; j < words.size(); ++j) col[words[j]] = j;
        IncrementalRref rr(words.size());
        for (const auto& v : ideal) {
            RatVector r(words.size(), Rational(0));
            for (const auto& [w, c] : v.terms()) r[col.at(w)] = c;
            rr.insert(std::move(r));
        }
        qb.ideal_dim = rr.rank();
        for (std::size_t j = 0; j < words.size(); ++j) {
            RatVector cand(words.size(), Rational(0));
            cand[j] = 1;
            if (rr.insert(std::move(cand))) qb.words.push_back(words[j]);
        }
        if (qb.words.size() + qb.ideal_dim != words.size())
            throw MathError("quotient_basis: dimension bookkeeping failed");
        basis_cache_[G] = qb;
        return qb;
    }

    // Specialized pairing submatrix on the given words.
    SForm<Rational> pairing(const std::vector<Word>& words) const {
        return build_sform(words, params_);
    }

    // Constants of degree G at the specialization, as classes over the
    // quotient basis: right-kernel vectors of the pairing, each re-verified
    // through the derivative oracle (d_i x must land in the lower ideal; with
    // no lower constants that is literally d_i x = 0).
    const ConstantSpace& constants(const std::vector<int>& G) {
        auto it = cache_.find(G);
        if (it != cache_.end()) return it->second;

        ConstantSpace cs;
        cs.degree = G;
        if (G.size() >= 2) {
            QuotientBasis qb = quotient_basis(G);
            SForm<Rational> S = pairing(qb.words);
            auto vectors = kernel_basis(S.entries);
            for (const auto& v : vectors) {
                NcPoly<Rational> rep;
                for (std::size_t j = 0; j < qb.words.size(); ++j)
                    rep.add_term(qb.words[j], v[j]);
                verify_constant_class(rep, G);
                cs.basis.push_back(std::move(rep));
            }
            cs.primitive_dim = cs.basis.size();
        }
        auto [pos, inserted] = cache_.emplace(G, std::move(cs));
        return pos->second;
    }

    // Independent oracle: dimension of {x : d_i x in ideal(G \ i) for all i}
    // modulo the degree-G ideal, solved as one linear system over all words
    // of degree G. Must agree with the kernel route.
    std::size_t brute_force_constant_dim(const std::vector<int>& G) {
        auto words = multilinear_words(G);
        std::map<Word, std::size_t> col;
        for (std::size_t j = 0; j < words.size(); ++j) col[words[j]] = j;

        RatMatrix system;
        for (int i : G) {
            std::vector<int> sub;
            for (int g : G)
                if (g != i) sub.push_back(g);
            auto sub_words = multilinear_words(sub);
            std::map<Word, std::size_t> sub_col;
            for (std::size_t j = 0; j < sub_words.size(); ++j) sub_col[sub_words[j]] = j;

            // complement projector: rows of a matrix P with P*ideal = 0
            RatMatrix ideal_rows;
            for (const auto& v : ideal_span(sub)) {
                RatVector r(sub_words.size(), Rational(0));
                for (const auto& [w, c] : v.terms()) r[sub_col.at(w)] = c;
                ideal_rows.push_back(std::move(r));
            }
            // Left-kernel of the ideal column span = rows annihilating it.
            RatMatrix ideal_cols(sub_words.size());
            for (auto& r : ideal_cols) r.assign(ideal_rows.size(), Rational(0));
            for (std::size_t k = 0; k < ideal_rows.size(); ++k)
                for (std::size_t j = 0; j < sub_words.size(); ++j)
                    ideal_cols[j][k] = ideal_rows[k][j];
            auto projector = ideal_rows.empty()
                                 ? identity_rows(sub_words.size())
                                 : kernel_basis(ideal_cols);

            // Rows of the big system: projector . d_i
            for (const auto& prow : projector) {
                RatVector row(words.size(), Rational(0));
                for (std::size_t j = 0; j < words.size(); ++j) {
                    NcPoly<Rational> d = apply_partial(i, NcPoly<Rational>(words[j]), params_);
                    Rational acc(0);
                    for (const auto& [w, c] : d.terms()) acc += prow[sub_col.at(w)] * c;
                    row[j] = acc;
                }
                system.push_back(std::move(row));
            }
        }
        std::size_t nullity = words.size() - (system.empty() ? 0 : rank_of(system, words.size()));
        std::size_t ideal_dim = quotient_basis(G).ideal_dim;
        if (nullity < ideal_dim)
            throw OracleMismatch("brute-force solver lost ideal vectors");
        return nullity - ideal_dim;
    }

public:
    // Row space maintained in reduced echelon form, one insertion at a time.
    class IncrementalRref {
    public:
        explicit IncrementalRref(std::size_t cols) : cols_(cols) {}

        // Reduce v against the rows; returns true (and absorbs v) when it
        // adds a new dimension.
        bool insert(RatVector v) {
            reduce(v);
            std::size_t lead = 0;
            while (lead < cols_ && v[lead] == 0) ++lead;
            if (lead == cols_) return false;
            Rational inv = 1 / v[lead];
            for (std::size_t j = lead; j < cols_; ++j) v[j] *= inv;
            for (auto& [l, row] : rows_)
                if (row[lead] != 0) {
                    Rational f = row[lead];
                    for (std::size_t j = lead; j < cols_; ++j) row[j] -= f * v[j];
                }
            rows_.emplace_back(lead, std::move(v));
            return true;
        }

        void reduce(RatVector& v) const {
            for (const auto& [lead, row] : rows_) {
                if (v[lead] == 0) continue;
                Rational f = v[lead];
                for (std::size_t j = lead; j < cols_; ++j) v[j] -= f * row[j];
            }
        }

        bool contains(RatVector v) const {
            reduce(v);
            for (const auto& x : v)
                if (x != 0) return false;
            return true;
        }

        std::size_t rank() const { return rows_.size(); }

    private:
        std::size_t cols_;
        std::vector<std::pair<std::size_t, RatVector>> rows_;
    };

private:
    static std::vector<RatVector> identity_rows(std::size_t n) {
        std::vector<RatVector> out(n, RatVector(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
        return out;
    }

    static std::size_t rank_of(const RatMatrix& m, std::size_t cols) {
        IncrementalRref rr(cols);
        for (const auto& row : m) rr.insert(row);
        return rr.rank();
    }

    // d_i rep must lie in the ideal span one degree down, for every i; when
    // there are no lower constants this is the strict condition d_i rep = 0.
    void verify_constant_class(const NcPoly<Rational>& rep, const std::vector<int>& G) {
        for (int i : G) {
            NcPoly<Rational> d = apply_partial(i, rep, params_);
            if (d.is_zero()) continue;
            std::vector<int> sub;
            for (int g : G)
                if (g != i) sub.push_back(g);
            auto sub_words = multilinear_words(sub);
            std::map<Word, std::size_t> sub_col;
            for (std::size_t j = 0; j < sub_words.size(); ++j) sub_col[sub_words[j]] = j;
            IncrementalRref rr(sub_words.size());
            for (const auto& v : ideal_span(sub)) {
                RatVector r(sub_words.size(), Rational(0));
                for (const auto& [w, c] : v.terms()) r[sub_col.at(w)] = c;
                rr.insert(std::move(r));
            }
            RatVector dv(sub_words.size(), Rational(0));
            for (const auto& [w, c] : d.terms()) dv[sub_col.at(w)] = c;
            if (!rr.contains(dv))
                throw OracleMismatch(
                    "kernel vector fails the derivative oracle at degree " +
                    Word(G).str());
        }
    }

    struct VecLess {
        bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
            return ConstraintSet::size_lex_less(a, b);
        }
    };

    Specialization spec_;
    QParams<Rational> params_;
    std::map<std::vector<int>, ConstantSpace, VecLess> cache_;
    std::map<std::vector<int>, QuotientBasis, VecLess> basis_cache_;
};

// The spec-facing wrapper: constants of degree G on V^Q at a consistent
// specialization.
inline ConstantSpace constant_space(const std::vector<int>& G, const ConstraintSet& Q,
                                    const Specialization& spec) {
    for (const auto& S : Q.subsets) {
        bool found = false;
        for (const auto& F : spec.forced) found = found || F == S;
        if (!found && spec.sigma_value(S) != 1)
            throw MathError("constant_space: specialization inconsistent with Q");
    }
    ConstantEngine engine(spec);
    return engine.constants(G);
}

} // namespace qshuffle
