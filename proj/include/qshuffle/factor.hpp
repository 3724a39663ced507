#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "qshuffle/laurent.hpp"
#include "qshuffle/rational.hpp"

namespace qshuffle {

// All subsets of {1..n} of size >= 2, ordered by (size, lex).
inline std::vector<std::vector<int>> index_subsets(int n, int min_size = 2) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i + 1);
        if (static_cast<int>(s.size()) >= min_size) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

inline std::string subset_label(const std::vector<int>& s) {
    bool wide = false;
    for (int i : s) wide = wide || i > 9;
    std::ostringstream os;
    os << "s";
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (wide && k) os << ",";
        os << s[k];
    }
    return os.str();
}

// det = unit * prod over factors of (1 - sigma_S)^exponent. `unit` is always
// a monomial with rational coefficient. `certified` marks results proven by
// the modular grid engine rather than by expanded trial division.
struct Factorization {
    struct Entry {
        std::vector<int> subset;
        int exponent = 0;
    };
    std::vector<Entry> factors;
    LaurentPoly unit = LaurentPoly::one();
    bool certified = false;
    std::vector<std::string> notes;

    int exponent_of(const std::vector<int>& subset) const {
        for (const auto& f : factors)
            if (f.subset == subset) return f.exponent;
        return 0;
    }

    // Total degree in the q variables: each (1 - sigma_S) contributes
    // |S|(|S|-1) per power.
    long q_degree() const {
        long d = 0;
        for (const auto& f : factors) {
            long k = static_cast<long>(f.subset.size());
            d += f.exponent * k * (k - 1);
        }
        return d;
    }

    // Degree in the pair variables {q_ab, q_ba}: powers of factors whose
    // subset contains both a and b.
    long pair_degree(int a, int b) const {
        long d = 0;
        for (const auto& f : factors) {
            bool has_a = std::find(f.subset.begin(), f.subset.end(), a) != f.subset.end();
            bool has_b = std::find(f.subset.begin(), f.subset.end(), b) != f.subset.end();
            if (has_a && has_b) d += f.exponent;
        }
        return d;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& f : factors) {
            if (f.exponent == 0) continue;
            if (!first) os << " ";
            first = false;
            os << "(1-" << subset_label(f.subset) << ")^" << f.exponent;
        }
        if (first) os << "1";
        if (!unit.is_one()) os << " * [" << unit.str() << "]";
        return os.str();
    }

    LaurentPoly expand_q_ring() const {
        LaurentPoly acc = unit;
        for (const auto& f : factors)
            acc *= (LaurentPoly::one() - sigma_monomial(f.subset)).pow(f.exponent);
        return acc;
    }
};

// w_{n,k} = u_{n,k} v_k = (n+1-k)! (k-2)!
inline Integer predicted_u(int n, int k) {
    if (k < 2 || k > n) throw RangeError("predicted_u: need 2 <= k <= n");
    return factorial(static_cast<unsigned>(n + 1 - k));
}
inline Integer predicted_v(int k) {
    if (k < 2) throw RangeError("predicted_v: need k >= 2");
    return factorial(static_cast<unsigned>(k - 2));
}
inline Integer predicted_exponent(int n, int k) {
    if (k < 2 || k > n) throw RangeError("predicted_exponent: need 2 <= k <= n");
    return predicted_u(n, k) * predicted_v(k);
}

// Factor an expanded determinant by repeated trial division against the
// candidate family (1 - sigma_S), S over subsets of {1..n}. The residual
// after all divisions must be a monomial; anything else means a factor
// outside the predicted family and is surfaced as a hard error.
inline Factorization factor_determinant(const LaurentPoly& d, int n) {
    if (d.is_zero()) throw MathError("factor_determinant: zero determinant");
    Factorization out;
    LaurentPoly rem = d;
    for (const auto& subset : index_subsets(n)) {
        LaurentPoly f = LaurentPoly::one() - sigma_monomial(subset);
        int e = 0;
        while (true) {
            auto q = poly_divide_exact(rem, f);
            if (!q) break;
            rem = *q;
            ++e;
        }
        if (e > 0) out.factors.push_back({subset, e});
    }
    if (!rem.is_monomial())
        throw NonMonomialResidual("factor_determinant: residual is not a monomial: " +
                                  rem.str());
    out.unit = rem;
    // Multiplication-back check.
    if (!(out.expand_q_ring() == d))
        throw MathError("factor_determinant: multiplication-back check failed");
    return out;
}

// The two sum rules of the determinant formula:
//   sum_k k(k-1) w_{n,k} C(n,k) = C(n,2) n!        (total q-degree)
//   sum_k w_{n,k} C(n-2,k-2)    = n!/2             (degree in one sigma pair)
// Optionally cross-checks the degrees of a computed factorization.
struct SumRuleReport {
    int n = 0;
    bool total_degree_ok = false;
    bool pair_degree_ok = false;
    Integer total_degree_lhs, total_degree_rhs;
    Integer pair_degree_lhs, pair_degree_rhs;
    bool checked_against_det = false;
    bool det_total_degree_ok = false;
    bool det_pair_degree_ok = false;

    bool all_ok() const {
        return total_degree_ok && pair_degree_ok &&
               (!checked_against_det || (det_total_degree_ok && det_pair_degree_ok));
    }
};

inline SumRuleReport check_sum_rules(int n, const Factorization* computed = nullptr) {
    if (n < 2) throw RangeError("check_sum_rules: need n >= 2");
    SumRuleReport r;
    r.n = n;
    Integer lhs_total = 0, lhs_pair = 0;
    for (int k = 2; k <= n; ++k) {
        Integer w = predicted_exponent(n, k);
        lhs_total += Integer(k) * (k - 1) * w * binomial(n, k);
        lhs_pair += w * binomial(n - 2, k - 2);
    }
    Integer nf = factorial(static_cast<unsigned>(n));
    r.total_degree_lhs = lhs_total;
    r.total_degree_rhs = binomial(n, 2) * nf;
    r.total_degree_ok = (lhs_total == r.total_degree_rhs);
    r.pair_degree_lhs = lhs_pair;
    r.pair_degree_rhs = nf / 2;
    r.pair_degree_ok = (lhs_pair == r.pair_degree_rhs);

    if (computed) {
        r.checked_against_det = true;
        r.det_total_degree_ok = (Integer(computed->q_degree()) == r.total_degree_rhs);
        r.det_pair_degree_ok = (Integer(computed->pair_degree(1, 2)) == r.pair_degree_rhs);
    }
    return r;
}

} // namespace qshuffle
