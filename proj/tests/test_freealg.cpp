#include <catch2/catch_amalgamated.hpp>

#include "qshuffle/partial.hpp"

#include "test_support.hpp"

using namespace qshuffle;
using qtest::Rng;

namespace {

using SymPoly = NcPoly<LaurentPoly>;

LaurentPoly qvar(int i, int j) { return LaurentPoly::variable(VarId{i, j}); }

SymPoly word_poly(std::initializer_list<int> ls) { return SymPoly(Word(ls)); }

} // namespace

TEST_CASE("word basics") {
    Word w({1, 3, 2});
    REQUIRE(w.degree() == std::multiset<int>{1, 2, 3});
    REQUIRE(w.reversed().reversed() == w);
    REQUIRE(w.str() == "e1.e3.e2");
    REQUIRE(Word({1, 1, 2}).multilinear() == false);
    REQUIRE(w.multilinear());
}

TEST_CASE("partial derivative examples") {
    auto q = QParams<LaurentPoly>::symbolic(2);

    // d_1 e_1 = 1
    REQUIRE(apply_partial(1, word_poly({1}), q) == SymPoly::unit(LaurentPoly::one()));

    // d_2 (e_1 e_2) = q_21 e_1
    REQUIRE(apply_partial(2, word_poly({1, 2}), q) == SymPoly(Word({1}), qvar(2, 1)));

    // d_1 (e_1 e_2 - q_21 e_2 e_1) = (1 - sigma_12) e_2
    SymPoly x = word_poly({1, 2}) - SymPoly(Word({2, 1}), qvar(2, 1));
    SymPoly expect(Word({2}), LaurentPoly::one() - sigma_monomial({1, 2}));
    REQUIRE(apply_partial(1, x, q) == expect);

    REQUIRE(apply_partial(1, word_poly({2}), q).is_zero());
    REQUIRE_THROWS_AS(apply_partial(3, word_poly({1}), q), IndexOutOfRange);
}

TEST_CASE("partial word composition anchors") {
    auto q = QParams<LaurentPoly>::symbolic(2);

    // d_(1) on e_1 -> 1
    REQUIRE(apply_partial_word(Word({1}), word_poly({1}), q) ==
            SymPoly::unit(LaurentPoly::one()));

    // Diagonal S entry: row word (1,2) against e_1 e_2 gives 1.
    REQUIRE(apply_partial_word(Word({1, 2}), word_poly({1, 2}), q).order0_term() ==
            LaurentPoly::one());

    // Off-diagonal entries pinned by the printed 2x2 matrix [[1,q12],[q21,1]]:
    // row (1,2) against e_2 e_1 must give q_12.
    REQUIRE(apply_partial_word(Word({1, 2}), word_poly({2, 1}), q).order0_term() ==
            qvar(1, 2));
    REQUIRE(apply_partial_word(Word({2, 1}), word_poly({1, 2}), q).order0_term() ==
            qvar(2, 1));
}

TEST_CASE("is_constant examples") {
    // sigma_12 = 1: q12 = 2, q21 = 1/2
    QParams<Rational> q(2);
    q.set(1, 2, make_rational(2));
    q.set(2, 1, make_rational(1, 2));
    NcPoly<Rational> c(Word({1, 2}));
    c.add_term(Word({2, 1}), -q.q(2, 1));
    REQUIRE(is_constant(c, q));

    // sigma_12 = 2: not constant
    QParams<Rational> q2(2);
    q2.set(1, 2, make_rational(2));
    q2.set(2, 1, make_rational(1));
    NcPoly<Rational> c2(Word({1, 2}));
    c2.add_term(Word({2, 1}), -q2.q(2, 1));
    REQUIRE_FALSE(is_constant(c2, q2));

    // e_1 is not a constant, and order-0 terms are rejected
    REQUIRE_FALSE(is_constant(NcPoly<Rational>(Word({1})), q));
    NcPoly<Rational> with_const = NcPoly<Rational>::unit(make_rational(1));
    REQUIRE_THROWS_AS(is_constant(with_const, q), HasConstantTerm);
}

TEST_CASE("defining recursion on random words") {
    // d_i(e_j w) = delta_ij w + q_ij e_j d_i(w), letters up to 6 long.
    Rng rng(0x5eedf001);
    const int n = 3;
    auto q = QParams<LaurentPoly>::symbolic(n, /*with_diagonal=*/true);
    for (int iter = 0; iter < 1000; ++iter) {
        int len = 1 + static_cast<int>(rng.below(6));
        Word w = qtest::random_word(rng, n, len);
        int i = 1 + static_cast<int>(rng.below(n));
        int j = w.letters.front();
        Word rest(std::vector<int>(w.letters.begin() + 1, w.letters.end()));

        SymPoly lhs = apply_partial(i, SymPoly(w), q);
        SymPoly rhs;
        if (i == j) rhs += SymPoly(rest);
        SymPoly d_rest = apply_partial(i, SymPoly(rest), q);
        for (const auto& [u, cu] : d_rest.terms())
            rhs.add_term(Word({j}).concat(u), q.q(i, j) * cu);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("linearity of the derivative") {
    Rng rng(0x5eedf002);
    const int n = 3;
    auto q = QParams<LaurentPoly>::symbolic(n, /*with_diagonal=*/true);
    for (int iter = 0; iter < 300; ++iter) {
        SymPoly x(qtest::random_word(rng, n, 3));
        SymPoly y(qtest::random_word(rng, n, 3));
        LaurentPoly a = qtest::random_poly(rng, n, 2, 1);
        LaurentPoly b = qtest::random_poly(rng, n, 2, 1);
        int i = 1 + static_cast<int>(rng.below(n));
        SymPoly lhs = apply_partial(i, x.scaled(a) + y.scaled(b), q);
        SymPoly rhs = apply_partial(i, x, q).scaled(a) + apply_partial(i, y, q).scaled(b);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("degree bookkeeping") {
    Rng rng(0x5eedf003);
    const int n = 4;
    auto q = QParams<LaurentPoly>::symbolic(n, /*with_diagonal=*/true);
    for (int iter = 0; iter < 300; ++iter) {
        Word w = qtest::random_word(rng, n, 4);
        int i = 1 + static_cast<int>(rng.below(n));
        SymPoly d = apply_partial(i, SymPoly(w), q);
        auto deg = w.degree();
        if (deg.count(i) == 0) {
            REQUIRE(d.is_zero());
        } else {
            auto expect = deg;
            expect.erase(expect.find(i));
            for (const auto& [u, cu] : d.terms()) REQUIRE(u.degree() == expect);
        }
    }
}

TEST_CASE("constants are closed under scalar multiples") {
    QParams<Rational> q(2);
    q.set(1, 2, make_rational(3));
    q.set(2, 1, make_rational(1, 3));
    NcPoly<Rational> c(Word({1, 2}));
    c.add_term(Word({2, 1}), -q.q(2, 1));
    REQUIRE(is_constant(c, q));
    REQUIRE(is_constant(c.scaled(make_rational(-7, 5)), q));
    NcPoly<Rational> doubled = c + c;
    REQUIRE(is_constant(doubled, q));
}

TEST_CASE("ncpoly rendering") {
    SymPoly x = word_poly({1, 3, 2});
    x.add_term(Word({2}), qvar(1, 2));
    REQUIRE(x.str() == "(q1_2)*e2 + (1)*e1.e3.e2");
}
