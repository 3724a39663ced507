#include <catch2/catch_amalgamated.hpp>

#include "qshuffle/constants.hpp"
#include "qshuffle/det.hpp"
#include "qshuffle/smatrix_q.hpp"

#include "test_support.hpp"

using namespace qshuffle;
using qtest::Rng;

TEST_CASE("generic specialization examples") {
    // n = 2, forced sigma_12 = 1: q21 = 1/q12
    auto s2 = generic_specialization(2, {{1, 2}}, 7);
    REQUIRE(s2.sigma_value({1, 2}) == 1);
    REQUIRE(s2.assignment.at(VarId{1, 2}) * s2.assignment.at(VarId{2, 1}) == 1);
    REQUIRE(s2.assignment.at(VarId{1, 2}) != 1);

    // n = 3, nothing forced: all sigmas generic
    auto s3 = generic_specialization(3, {}, 7);
    for (const auto& sub : index_subsets(3)) REQUIRE(s3.sigma_value(sub) != 1);

    // n = 3, forced sigma_123 = 1: pairs stay generic
    auto s3f = generic_specialization(3, {{1, 2, 3}}, 7);
    REQUIRE(s3f.sigma_value({1, 2, 3}) == 1);
    REQUIRE(s3f.sigma_value({1, 2}) != 1);
    REQUIRE(s3f.sigma_value({1, 3}) != 1);
    REQUIRE(s3f.sigma_value({2, 3}) != 1);

    // determinism
    auto again = generic_specialization(3, {{1, 2, 3}}, 7);
    REQUIRE(again.assignment == s3f.assignment);
    auto other = generic_specialization(3, {{1, 2, 3}}, 8);
    REQUIRE(other.assignment != s3f.assignment);
}

TEST_CASE("kernel examples at degree {1,2}") {
    // sigma_12 = 1: one kernel vector proportional to e1e2 - q21 e2e1
    auto spec = generic_specialization(2, {{1, 2}}, 11);
    ConstantEngine engine(spec);
    auto cs = engine.constants({1, 2});
    REQUIRE(cs.dim() == 1);
    REQUIRE(cs.primitive_dim == 1);
    const auto& c = cs.basis[0];
    Rational q21 = spec.assignment.at(VarId{2, 1});
    // proportional: c = t * (e1e2 - q21 e2e1)
    Rational t = c.coefficient(Word({1, 2}));
    REQUIRE(t != 0);
    REQUIRE(c.coefficient(Word({2, 1})) == -t * q21);
    REQUIRE(is_constant(c, spec.params()));

    // sigma_12 = 2-ish generic: empty kernel
    auto spec2 = generic_specialization(2, {}, 11);
    ConstantEngine engine2(spec2);
    REQUIRE(engine2.constants({1, 2}).dim() == 0);
}

TEST_CASE("Theorem 1.3.6 dimensions for n = 3, 4") {
    for (int n : {3, 4}) {
        std::vector<int> G(n), top(n);
        for (int i = 0; i < n; ++i) G[i] = top[i] = i + 1;
        auto spec = generic_specialization(n, {top}, 23);
        ConstantEngine engine(spec);
        auto cs = engine.constants(G);
        Integer expect = factorial(static_cast<unsigned>(n - 2));
        REQUIRE(Integer(static_cast<unsigned long>(cs.dim())) == expect);
        REQUIRE(cs.primitive_dim == cs.dim());
        // every basis element is a strict constant here (no lower constants)
        for (const auto& c : cs.basis) REQUIRE(is_constant(c, spec.params()));
    }
}

TEST_CASE("kernel dimension equals brute-force derivative solver") {
    // Exact agreement between the S-matrix kernel route and the independent
    // d_i-system solver, across the canonical constraint sets at n = 3, 4.
    struct Case {
        int n;
        std::vector<std::vector<int>> Q;
        std::vector<std::vector<int>> forced; // includes the boundary
    };
    std::vector<Case> cases{
        {3, {}, {{1, 2, 3}}},
        {3, {{1, 2}}, {{1, 2}, {1, 2, 3}}},
        {3, {{1, 2}}, {{1, 2}}},
        {4, {}, {{1, 2, 3, 4}}},
        {4, {{1, 2}}, {{1, 2}, {1, 2, 3, 4}}},
        {4, {{1, 2}, {3, 4}}, {{1, 2}, {3, 4}, {1, 2, 3, 4}}},
        {4, {{1, 2}, {1, 3}}, {{1, 2}, {1, 3}, {1, 2, 3, 4}}},
        {4, {{1, 2, 3}}, {{1, 2, 3}, {1, 2, 3, 4}}},
    };
    for (const auto& tc : cases) {
        std::vector<int> G(tc.n);
        for (int i = 0; i < tc.n; ++i) G[i] = i + 1;
        auto spec = generic_specialization(tc.n, tc.forced, 31);
        ConstantEngine engine(spec);
        auto cs = engine.constants(G);
        INFO("n=" << tc.n << " forced sets: " << tc.forced.size());
        REQUIRE(cs.dim() == engine.brute_force_constant_dim(G));
    }
}

TEST_CASE("constant_space catalog values") {
    // G = {1..4}, Q = {}, forced sigma_1234 = 1: dim 2 = (4-2)!
    {
        auto spec = generic_specialization(4, {{1, 2, 3, 4}}, 41);
        auto cs = constant_space({1, 2, 3, 4}, ConstraintSet(4, {}), spec);
        REQUIRE(cs.dim() == 2);
    }
    // G = {1,2,3}, Q = {{1,2}}, sigma_123 = 1: no primitive boundary
    {
        auto spec = generic_specialization(3, {{1, 2}, {1, 2, 3}}, 41);
        auto cs = constant_space({1, 2, 3}, ConstraintSet(3, {{1, 2}}), spec);
        REQUIRE(cs.primitive_dim == 0);
        REQUIRE(cs.dim() == 0);
    }
    // G = {1..4}, Q = {{1,2},{3,4}}, sigma_1234 = 1: exactly one primitive
    {
        auto spec = generic_specialization(4, {{1, 2}, {3, 4}, {1, 2, 3, 4}}, 41);
        auto cs = constant_space({1, 2, 3, 4}, ConstraintSet(4, {{1, 2}, {3, 4}}), spec);
        REQUIRE(cs.primitive_dim == 1);
    }
    // inconsistent spec is rejected
    {
        auto spec = generic_specialization(3, {}, 41);
        REQUIRE_THROWS_AS(constant_space({1, 2, 3}, ConstraintSet(3, {{1, 2}}), spec),
                          MathError);
    }
}

TEST_CASE("Lemma 6.3: factor exponent equals kernel dimension at the locus") {
    // For fixed generic parameters elsewhere, the exponent of
    // (1 - sigma_{1..n}) in det S_G(Q) equals dim ker S_G(Q) where that
    // sigma reaches 1. Checked for n = 3 (Q empty) and n = 4 catalog cases.
    struct Case {
        int n;
        std::vector<std::vector<int>> Q;
    };
    std::vector<Case> cases{{3, {}}, {4, {}}, {4, {{1, 2}}}, {4, {{1, 2}, {3, 4}}},
                            {4, {{1, 2, 3}}}};
    for (const auto& tc : cases) {
        std::vector<int> G(tc.n), top(tc.n);
        for (int i = 0; i < tc.n; ++i) G[i] = top[i] = i + 1;
        ConstraintSet Q(tc.n, tc.Q);
        Factorization fact = tc.n <= 3 && tc.Q.empty()
                                 ? factor_smatrix_certified(G)
                                 : factor_smatrix_q_certified(G, Q);
        int exponent = fact.exponent_of(top);

        auto forced = tc.Q;
        forced.push_back(top);
        auto spec = generic_specialization(tc.n, forced, 53);
        ConstantEngine engine(spec);
        QuotientBasis qb = quotient_basis_for(G, Q);
        SForm<Rational> SQ = engine.pairing(qb.words);
        auto kernel = kernel_basis(SQ.entries);
        INFO("Q = " << Q.str());
        REQUIRE(static_cast<int>(kernel.size()) == exponent);
    }
}
