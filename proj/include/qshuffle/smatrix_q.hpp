#pragma once

#include <optional>

#include "qshuffle/constants.hpp"
#include "qshuffle/sigma_form.hpp"

namespace qshuffle {

// Basis of B_G(Q): the quadratic normal forms when every constraint inside G
// is a pair, otherwise the greedy lexicographic complement computed from a
// generic specialization of V^Q.
inline QuotientBasis quotient_basis_for(const std::vector<int>& G, const ConstraintSet& Q,
                                        std::uint64_t seed = 0xb1ff5eedULL) {
    ConstraintSet inside = Q.restricted_to(G);
    if (inside.pairs_only() && !inside.subsets.empty())
        return quadratic_quotient_basis(G, inside.pair_list());
    if (inside.subsets.empty()) {
        QuotientBasis qb;
        qb.G = G;
        qb.words = multilinear_words(G);
        qb.ideal_dim = 0;
        return qb;
    }
    Specialization spec = generic_specialization(Q.n, Q.subsets, seed);
    ConstantEngine engine(spec);
    return engine.quotient_basis(G);
}

// General quotient basis from an explicit specialization (the spec-facing
// entry point; the two constructions must agree where both apply).
inline QuotientBasis general_quotient_basis(const std::vector<int>& G, const ConstraintSet& Q,
                                            const Specialization& spec) {
    ConstantEngine engine(spec);
    (void)Q;
    return engine.quotient_basis(G);
}

// S_G(Q): the pairing restricted to the quotient basis, with the constrained
// parameters eliminated. Descent of the form (the ideal lies in both
// radicals) is checked at a generic specialization of V^Q; failure is a hard
// error because it would falsify the construction upstream.
inline SForm<LaurentPoly> build_smatrix_q(const std::vector<int>& G, const ConstraintSet& Q,
                                          std::uint64_t seed = 0xb1ff5eedULL) {
    require_multilinear_degree(G);
    QuotientBasis qb = quotient_basis_for(G, Q, seed);
    auto elim = eliminate_constraints(QParams<LaurentPoly>::symbolic(Q.n), Q);
    SForm<LaurentPoly> S = build_sform(qb.words, elim);

    // Descent check at a generic specialization of V^Q: the full form must
    // annihilate every ideal vector (the ideal lies in the radical on the
    // monomial side, which is what makes kernel vectors of the projected
    // matrix honest constants of the quotient).
    Specialization spec = generic_specialization(Q.n, Q.subsets, seed);
    ConstantEngine engine(spec);
    auto ideal = engine.ideal_span(G);
    if (!ideal.empty()) {
        auto words = multilinear_words(G);
        std::map<Word, std::size_t> col;
        for (std::size_t j = 0; j < words.size(); ++j) col[words[j]] = j;
        SForm<Rational> full = build_sform(words, spec.params());
        for (const auto& v : ideal) {
            RatVector x(words.size(), Rational(0));
            for (const auto& [w, c] : v.terms()) x[col.at(w)] = c;
            for (std::size_t a = 0; a < words.size(); ++a) {
                Rational acc(0);
                for (std::size_t b = 0; b < words.size(); ++b)
                    acc += full.entries[a][b] * x[b];
                if (acc != 0)
                    throw FormDoesNotDescend("S_G does not annihilate the ideal at degree " +
                                             Word(G).str());
            }
        }
    }
    return S;
}

// Certified factorization of det S_G(Q) over the images of the candidate
// family (1 - sigma_T), T <= G, under the constraint elimination.
inline Factorization factor_smatrix_q_certified(const std::vector<int>& G,
                                                const ConstraintSet& Q,
                                                std::uint64_t seed = 0xb1ff5eedULL) {
    SForm<LaurentPoly> S = build_smatrix_q(G, Q, seed);
    SigmaElimination selim = sigma_eliminate(Q);
    MonoMatrix T = build_sigma_matrix(S.basis, &selim);
    certify_sigma_reduction(S, T);

    // Candidate images, deduplicated (distinct subsets can share an image on
    // V^Q); constrained subsets have image 1 and drop out.
    int n = static_cast<int>(G.size());
    std::vector<std::vector<int>> subsets;
    std::vector<Monomial> cands;
    std::vector<std::string> notes;
    std::map<Monomial, std::size_t> seen;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(G[i]);
        if (s.size() < 2) continue;
        LaurentPoly image = selim.image_of(s);
        if (image.is_one()) continue;
        auto [mono, c] = image.monomial_term();
        Monomial key = mono.factors().front().second < 0 ? mono.inverse() : mono;
        auto it = seen.find(key);
        if (it != seen.end()) {
            notes.push_back("factor for " + ConstraintSet::subset_sigma_name(s) +
                            " coincides with " +
                            ConstraintSet::subset_sigma_name(subsets[it->second]) +
                            " on V^Q; exponent attributed to the latter");
            continue;
        }
        seen[key] = subsets.size();
        subsets.push_back(s);
        cands.push_back(mono);
    }

    GridCertOptions opt;
    opt.seed = seed;
    GridCertificate cert = certify_factorization(T, cands, opt);

    Factorization out;
    out.certified = true;
    out.notes = std::move(notes);
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (cert.exponents[i] > 0) out.factors.push_back({subsets[i], cert.exponents[i]});
    std::sort(out.factors.begin(), out.factors.end(),
              [](const Factorization::Entry& a, const Factorization::Entry& b) {
                  return ConstraintSet::size_lex_less(a.subset, b.subset);
              });
    LaurentPoly unit{Rational(cert.unit_coeff)};
    for (const auto& [v, e] : cert.unit_mono.factors())
        unit *= sigma_monomial({v.i, v.j}).pow(e);
    out.unit = unit;
    return out;
}

} // namespace qshuffle
