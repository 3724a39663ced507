#pragma once

#include <algorithm>
#include <vector>

#include "qshuffle/constraints.hpp"
#include "qshuffle/factor.hpp"
#include "qshuffle/gridcert.hpp"
#include "qshuffle/smatrix.hpp"

namespace qshuffle {

// The sigma reduction of an S-form. Conjugating S by the diagonal matrix
// d_w = S[w0][w] (w0 the first basis word) turns every entry into a product
// of sigma_uv = q_uv q_vu:
//
//   T[a][b] = prod over pairs u <_{w0} v with (v before u in a) and
//             (u before v in b) of sigma_uv.
//
// det T = det S exactly; the conjugation identity d_a S[a][b] = T[a][b] d_b
// is verified entrywise (monomial arithmetic) whenever a certificate is
// requested, so nothing here rests on the derivation alone.

inline Monomial sigma_entry_monomial(const Word& w0, const Word& a, const Word& b) {
    auto pos = [](const Word& w, int x) {
        return std::find(w.letters.begin(), w.letters.end(), x) - w.letters.begin();
    };
    std::vector<Monomial::Term> t;
    for (std::size_t p = 0; p < w0.letters.size(); ++p)
        for (std::size_t s = p + 1; s < w0.letters.size(); ++s) {
            int u = w0.letters[p], v = w0.letters[s]; // u before v in w0
            if (pos(a, v) < pos(a, u) && pos(b, u) < pos(b, v)) {
                t.emplace_back(VarId{std::min(u, v), std::max(u, v)}, 1);
            }
        }
    std::sort(t.begin(), t.end());
    return Monomial::from_sorted(std::move(t));
}

// Sigma-reduced matrix on a word basis, with an optional sigma-level
// elimination substituted into the entries.
inline MonoMatrix build_sigma_matrix(const std::vector<Word>& basis,
                                     const SigmaElimination* elim = nullptr) {
    if (basis.empty()) throw DimensionMismatch("build_sigma_matrix: empty basis");
    const Word& w0 = basis.front();
    MonoMatrix m(basis.size(), std::vector<MonoEntry>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Monomial mono = sigma_entry_monomial(w0, basis[a], basis[b]);
            if (elim) {
                LaurentPoly sub = elim->substitute(mono);
                auto [m2, c] = sub.monomial_term();
                if (c != 1)
                    throw MathError("build_sigma_matrix: non-unit coefficient");
                mono = m2;
            }
            m[a][b] = MonoEntry{1, mono};
        }
    return m;
}

// Entrywise certificate d_a * S[a][b] == T[a][b] * d_b in the q-ring, where
// sigma_uv is expanded back to q_uv q_vu and the same parameter elimination
// is applied on both sides.
inline void certify_sigma_reduction(const SForm<LaurentPoly>& S, const MonoMatrix& T) {
    const std::size_t n = S.dim();
    if (T.size() != n) throw DimensionMismatch("certify_sigma_reduction: size mismatch");
    const auto& d = S.entries[0]; // d_w = S[w0][w]
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // T entry mapped into the q-ring.
            LaurentPoly t_q = LaurentPoly(Rational(T[a][b].coeff));
            for (const auto& [v, e] : T[a][b].mono.factors()) {
                LaurentPoly sigma = S.params.sigma({v.i, v.j});
                t_q *= sigma.pow(e);
            }
            if (!(d[a] * S.entries[a][b] == t_q * d[b]))
                throw CertificationFailure("sigma reduction: entry identity fails at (" +
                                           std::to_string(a) + "," + std::to_string(b) + ")");
        }
}

// Entrywise equivariance of the multilinear S-form under relabeling
// generators: S[pi a][pi b] == pi(S[a][b]). Together with the sigma
// reduction this certifies that det T is a symmetric function of the sigma
// variables, which is what lets the grid engine skip non-canonical points.
inline void certify_relabel_equivariance(const std::vector<int>& G,
                                         const QParams<LaurentPoly>& q) {
    SForm<LaurentPoly> S = build_smatrix(G, q);
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < S.basis.size(); ++i) index[S.basis[i]] = i;

    std::vector<int> perm(G.begin(), G.end());
    std::sort(perm.begin(), perm.end());
    do {
        std::map<int, int> rel; // G[k] -> perm[k]
        for (std::size_t k = 0; k < G.size(); ++k) rel[G[k]] = perm[k];
        std::map<VarId, LaurentPoly> varmap;
        for (int i : G)
            for (int j : G)
                if (i != j)
                    varmap[VarId{i, j}] = LaurentPoly::variable(VarId{rel[i], rel[j]});
        for (std::size_t a = 0; a < S.basis.size(); ++a)
            for (std::size_t b = 0; b < S.basis.size(); ++b) {
                Word pa = S.basis[a], pb = S.basis[b];
                for (auto& x : pa.letters) x = rel[x];
                for (auto& x : pb.letters) x = rel[x];
                LaurentPoly lhs = S.entries[index.at(pa)][index.at(pb)];
                LaurentPoly rhs = poly_substitute(S.entries[a][b], varmap);
                if (!(lhs == rhs))
                    throw CertificationFailure(
                        "relabel equivariance fails; symmetry reduction invalid");
            }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// Variable permutations of the sigma variables induced by relabeling the
// generators of G, as index maps into `vars`.
inline std::vector<std::vector<int>> sigma_var_permutations(const std::vector<int>& G,
                                                            const std::vector<VarId>& vars) {
    std::vector<std::vector<int>> out;
    std::vector<int> perm(G.begin(), G.end());
    std::sort(perm.begin(), perm.end());
    do {
        std::map<int, int> rel;
        bool identity = true;
        for (std::size_t k = 0; k < G.size(); ++k) {
            rel[G[k]] = perm[k];
            identity = identity && G[k] == perm[k];
        }
        if (identity) continue;
        std::vector<int> map(vars.size());
        bool ok = true;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            int u = rel.at(vars[k].i), v = rel.at(vars[k].j);
            VarId target{std::min(u, v), std::max(u, v)};
            auto it = std::lower_bound(vars.begin(), vars.end(), target);
            if (it == vars.end() || !(*it == target)) {
                ok = false;
                break;
            }
            map[k] = static_cast<int>(it - vars.begin());
        }
        if (ok) out.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Certified factorization of det S_G for multilinear G over the full
// candidate family (1 - sigma_S), via the sigma reduction and the grid
// engine. Returns the factorization in terms of the q-ring subsets.
inline Factorization factor_smatrix_certified(const std::vector<int>& G,
                                              std::uint64_t seed = 0x9d2c5680u) {
    require_multilinear_degree(G);
    auto q = QParams<LaurentPoly>::symbolic(*std::max_element(G.begin(), G.end()));

    SForm<LaurentPoly> S = build_smatrix(G, q);
    MonoMatrix T = build_sigma_matrix(S.basis);
    certify_sigma_reduction(S, T);
    certify_relabel_equivariance(G, q);

    // Candidate subsets of G with their sigma-pair monomials.
    std::vector<std::vector<int>> subsets;
    std::vector<Monomial> cands;
    int n = static_cast<int>(G.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(G[i]);
        if (s.size() < 2) continue;
        subsets.push_back(s);
        cands.push_back(sigma_pair_monomial(s));
    }

    detail::PackedMatrix probe = detail::pack_matrix(T, cands);
    GridCertOptions opt;
    opt.seed = seed;
    opt.var_perms = sigma_var_permutations(G, probe.vars);
    GridCertificate cert = certify_factorization(T, cands, opt);

    Factorization out;
    out.certified = true;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (cert.exponents[i] > 0) out.factors.push_back({subsets[i], cert.exponents[i]});
    std::sort(out.factors.begin(), out.factors.end(),
              [](const Factorization::Entry& a, const Factorization::Entry& b) {
                  return ConstraintSet::size_lex_less(a.subset, b.subset);
              });
    // The unit lives in the sigma ring; map it back to q variables.
    LaurentPoly unit{Rational(cert.unit_coeff)};
    for (const auto& [v, e] : cert.unit_mono.factors())
        unit *= sigma_monomial({v.i, v.j}).pow(e);
    out.unit = unit;
    return out;
}

} // namespace qshuffle
