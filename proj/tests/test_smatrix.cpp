#include <catch2/catch_amalgamated.hpp>

#include "qshuffle/det.hpp"
#include "qshuffle/factor.hpp"
#include "qshuffle/smatrix.hpp"

#include "test_support.hpp"

using namespace qshuffle;
using qtest::Rng;

namespace {

LaurentPoly qvar(int i, int j) { return LaurentPoly::variable(VarId{i, j}); }

// Independent determinant oracle: cofactor expansion along the first row.
LaurentPoly cofactor_det(const std::vector<std::vector<LaurentPoly>>& m) {
    if (m.empty()) return LaurentPoly::one();
    if (m.size() == 1) return m[0][0];
    LaurentPoly acc;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[0][j].is_zero()) continue;
        LaurentPoly minor = cofactor_det(detail::strike(m, 0, j));
        LaurentPoly term = m[0][j] * minor;
        if (j % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

QParams<RatFunc> lift_ratfunc(const QParams<LaurentPoly>& q) {
    QParams<RatFunc> out(q.n());
    for (const auto& [ij, v] : q.values()) out.set(ij.first, ij.second, RatFunc(v));
    return out;
}

NcPoly<RatFunc> lift_ratfunc(const NcPoly<LaurentPoly>& x) {
    NcPoly<RatFunc> out;
    for (const auto& [w, c] : x.terms()) out.add_term(w, RatFunc(c));
    return out;
}

} // namespace

TEST_CASE("2x2 convention anchor") {
    auto q = QParams<LaurentPoly>::symbolic(2);
    auto S = build_smatrix({1, 2}, q);
    REQUIRE(S.basis == std::vector<Word>{Word({1, 2}), Word({2, 1})});
    REQUIRE(S.entries[0][0] == LaurentPoly::one());
    REQUIRE(S.entries[0][1] == qvar(1, 2));
    REQUIRE(S.entries[1][0] == qvar(2, 1));
    REQUIRE(S.entries[1][1] == LaurentPoly::one());
    REQUIRE(det_exact(S) == LaurentPoly::one() - sigma_monomial({1, 2}));
}

TEST_CASE("degenerate and invalid degrees") {
    auto q = QParams<LaurentPoly>::symbolic(1);
    auto S = build_smatrix({1}, q);
    REQUIRE(S.dim() == 1);
    REQUIRE(S.entries[0][0] == LaurentPoly::one());

    auto q3 = QParams<LaurentPoly>::symbolic(3);
    REQUIRE_THROWS_AS(build_smatrix({1, 2, 2}, q3), RepeatedIndex);
}

TEST_CASE("identity matrix determinant") {
    std::vector<std::vector<LaurentPoly>> id(6, std::vector<LaurentPoly>(6));
    for (int i = 0; i < 6; ++i) id[i][i] = LaurentPoly::one();
    REQUIRE(det_exact(id) == LaurentPoly::one());
}

TEST_CASE("diagonal entries are 1 and entries are monomials") {
    auto q = QParams<LaurentPoly>::symbolic(3);
    auto S = build_smatrix({1, 2, 3}, q);
    REQUIRE(S.dim() == 6);
    for (std::size_t a = 0; a < 6; ++a) {
        REQUIRE(S.entries[a][a] == LaurentPoly::one());
        for (std::size_t b = 0; b < 6; ++b) {
            REQUIRE(S.entries[a][b].is_monomial());
            REQUIRE(S.entries[a][b].monomial_term().second == 1);
        }
    }
}

TEST_CASE("symmetric parameters give a symmetric matrix") {
    auto q = QParams<LaurentPoly>::symbolic(3);
    auto S = build_smatrix({1, 2, 3}, q);
    // Substitute q_ji := q_ij for i < j.
    std::map<VarId, LaurentPoly> sym;
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) sym[VarId{j, i}] = qvar(i, j);
    for (std::size_t a = 0; a < S.dim(); ++a)
        for (std::size_t b = 0; b < S.dim(); ++b)
            REQUIRE(poly_substitute(S.entries[a][b], sym) ==
                    poly_substitute(S.entries[b][a], sym));
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
    Rng rng(0x5eed5001);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t n = 2 + rng.below(3); // 2..4
        std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n));
        for (auto& row : m)
            for (auto& e : row) e = qtest::random_poly(rng, 2, 2, 1);
        REQUIRE(det_exact(m) == cofactor_det(m));
    }
}

TEST_CASE("Example 2.2.2: det S at n=3 factors exactly") {
    auto q = QParams<LaurentPoly>::symbolic(3);
    auto S = build_smatrix({1, 2, 3}, q);
    LaurentPoly det = det_exact(S);

    LaurentPoly one = LaurentPoly::one();
    LaurentPoly expect = (one - sigma_monomial({1, 2})).pow(2) *
                         (one - sigma_monomial({2, 3})).pow(2) *
                         (one - sigma_monomial({1, 3})).pow(2) *
                         (one - sigma_monomial({1, 2, 3}));
    REQUIRE(det == expect);
    REQUIRE(det == cofactor_det(S.entries));

    auto fact = factor_determinant(det, 3);
    REQUIRE(fact.unit.is_one());
    REQUIRE(fact.exponent_of({1, 2}) == 2);
    REQUIRE(fact.exponent_of({1, 3}) == 2);
    REQUIRE(fact.exponent_of({2, 3}) == 2);
    REQUIRE(fact.exponent_of({1, 2, 3}) == 1);
    REQUIRE(fact.str() == "(1-s12)^2 (1-s13)^2 (1-s23)^2 (1-s123)^1");

    // Dividing out the top factor leaves the paper's remaining product.
    auto rest = poly_divide_exact(det, one - sigma_monomial({1, 2, 3}));
    REQUIRE(rest);
    REQUIRE(*rest == (one - sigma_monomial({1, 2})).pow(2) *
                         (one - sigma_monomial({2, 3})).pow(2) *
                         (one - sigma_monomial({1, 3})).pow(2));
}

TEST_CASE("factor_determinant trivial and error cases") {
    auto f = factor_determinant(LaurentPoly::one(), 3);
    REQUIRE(f.factors.empty());
    REQUIRE(f.unit.is_one());

    // A factor outside the predicted family must be loud.
    LaurentPoly bad = LaurentPoly::one() + qvar(1, 2);
    REQUIRE_THROWS_AS(factor_determinant(bad, 2), NonMonomialResidual);
}

TEST_CASE("predicted exponents") {
    REQUIRE(predicted_exponent(3, 2) == 2);
    REQUIRE(predicted_exponent(3, 3) == 1);
    REQUIRE(predicted_exponent(4, 2) == 6);
    REQUIRE(predicted_exponent(4, 3) == 2);
    REQUIRE(predicted_exponent(4, 4) == 2);
    REQUIRE_THROWS_AS(predicted_exponent(3, 1), RangeError);
    REQUIRE_THROWS_AS(predicted_exponent(3, 4), RangeError);
}

TEST_CASE("sum rules") {
    for (int n = 2; n <= 8; ++n) {
        auto r = check_sum_rules(n);
        INFO("n = " << n);
        REQUIRE(r.total_degree_ok);
        REQUIRE(r.pair_degree_ok);
    }
    auto r4 = check_sum_rules(4);
    REQUIRE(r4.total_degree_lhs == 144);
    REQUIRE(r4.total_degree_rhs == 144);
    auto r3 = check_sum_rules(3);
    REQUIRE(r3.pair_degree_lhs == 3);
    auto r2 = check_sum_rules(2);
    REQUIRE(r2.total_degree_lhs == 2);

    // Degrees of the computed n=3 determinant match the sum rules.
    auto q = QParams<LaurentPoly>::symbolic(3);
    auto fact = factor_determinant(det_exact(build_smatrix({1, 2, 3}, q)), 3);
    auto checked = check_sum_rules(3, &fact);
    REQUIRE(checked.all_ok());
}

TEST_CASE("t-matrix: size one") {
    auto q = QParams<LaurentPoly>::symbolic(1);
    auto S = build_smatrix({1}, q);
    auto inv = t_matrix(S);
    REQUIRE(inv[0][0] == RatFunc(LaurentPoly::one()));
}

TEST_CASE("t-matrix: 2x2 inversion formula") {
    auto q = QParams<LaurentPoly>::symbolic(2);
    auto S = build_smatrix({1, 2}, q);
    auto inv = t_matrix(S);
    LaurentPoly d = LaurentPoly::one() - sigma_monomial({1, 2});
    REQUIRE(inv[0][0] == RatFunc(LaurentPoly::one(), d));
    REQUIRE(inv[0][1] == RatFunc(-qvar(1, 2), d));
    REQUIRE(inv[1][0] == RatFunc(-qvar(2, 1), d));
    REQUIRE(inv[1][1] == RatFunc(LaurentPoly::one(), d));
}

TEST_CASE("t-matrix: S * t = identity for n <= 3") {
    for (int n = 2; n <= 3; ++n) {
        auto q = QParams<LaurentPoly>::symbolic(n);
        std::vector<int> G(n);
        for (int i = 0; i < n; ++i) G[i] = i + 1;
        auto S = build_smatrix(G, q);
        auto inv = t_matrix(S);
        for (std::size_t i = 0; i < S.dim(); ++i)
            for (std::size_t k = 0; k < S.dim(); ++k) {
                RatFunc acc;
                for (std::size_t j = 0; j < S.dim(); ++j)
                    acc += RatFunc(S.entries[i][j]) * inv[j][k];
                if (i == k)
                    REQUIRE(acc.is_one());
                else
                    REQUIRE(acc.is_zero());
            }
    }
}

TEST_CASE("t-matrix rows satisfy the derivative recursion") {
    // d_k t_i = delta_{k, i_1} t_{tail(i)} with the tail row taken from the
    // S-matrix one degree down.
    const int n = 3;
    auto q = QParams<LaurentPoly>::symbolic(n);
    auto qr = lift_ratfunc(q);
    auto S3 = build_smatrix({1, 2, 3}, q);
    auto inv3 = t_matrix(S3);

    for (std::size_t i = 0; i < S3.dim(); ++i) {
        NcPoly<RatFunc> ti = t_row(S3, inv3, i);
        const Word& wi = S3.basis[i];
        for (int k = 1; k <= n; ++k) {
            NcPoly<RatFunc> d = apply_partial(k, ti, qr);
            if (k != wi.letters.front()) {
                REQUIRE(d.is_zero());
                continue;
            }
            Word tail(std::vector<int>(wi.letters.begin() + 1, wi.letters.end()));
            std::vector<int> Gtail = tail.letters;
            std::sort(Gtail.begin(), Gtail.end());
            auto S2 = build_smatrix(Gtail, q);
            auto inv2 = t_matrix(S2);
            std::size_t idx = std::find(S2.basis.begin(), S2.basis.end(), tail) -
                              S2.basis.begin();
            NcPoly<RatFunc> expect = t_row(S2, inv2, idx);
            NcPoly<RatFunc> diff = d - expect;
            REQUIRE(diff.is_zero());
        }
    }
}

TEST_CASE("singular matrices are rejected by t_matrix") {
    std::vector<std::vector<LaurentPoly>> zero(2, std::vector<LaurentPoly>(2));
    SForm<LaurentPoly> m;
    m.basis = {Word({1, 2}), Word({2, 1})};
    m.entries = zero;
    REQUIRE_THROWS_AS(t_matrix(m), SingularMatrix);
}
