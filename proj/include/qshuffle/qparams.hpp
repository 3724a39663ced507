#pragma once

#include <map>
#include <utility>

#include "qshuffle/errors.hpp"
#include "qshuffle/laurent.hpp"

namespace qshuffle {

// The deformation parameters q_ij of a q-algebra on n generators. Values live
// in an exact ring C: symbolic variables (LaurentPoly), eliminated monomial
// expressions, or rational specializations. Diagonal parameters q_ii are
// optional; they only enter the Serre-element extension.
template <class C>
class QParams {
public:
    QParams() = default;
    explicit QParams(int n) : n_(n) {}

    static QParams<LaurentPoly> symbolic(int n, bool with_diagonal = false) {
        QParams<LaurentPoly> q(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j || with_diagonal)
                    q.set(i, j, LaurentPoly::variable(VarId{i, j}));
        return q;
    }

    int n() const { return n_; }

    void set(int i, int j, C value) {
        check_range(i);
        check_range(j);
        if constexpr (std::is_same_v<C, Rational>) {
            if (qshuffle::is_zero(value))
                throw ZeroAssignment("QParams: q parameters must be nonzero");
        }
        values_[{i, j}] = std::move(value);
    }

    bool has(int i, int j) const { return values_.count({i, j}) != 0; }

    const C& q(int i, int j) const {
        check_range(i);
        check_range(j);
        auto it = values_.find({i, j});
        if (it == values_.end()) {
            if (i == j)
                throw MissingDiagonalParameter("QParams: q_" + std::to_string(i) + "," +
                                               std::to_string(i) + " not supplied");
            throw MathError("QParams: q_" + std::to_string(i) + "," + std::to_string(j) +
                            " not set");
        }
        return it->second;
    }

    const std::map<std::pair<int, int>, C>& values() const { return values_; }

    // sigma_S = prod over ordered pairs i != j in S of q_ij, in C.
    C sigma(const std::vector<int>& subset) const {
        if (subset.size() < 2)
            throw SubsetTooSmall("sigma: need at least two indices");
        C acc(1);
        for (int i : subset)
            for (int j : subset)
                if (i != j) acc = acc * q(i, j);
        return acc;
    }

private:
    void check_range(int i) const {
        if (i < 1 || i > n_)
            throw IndexOutOfRange("QParams: generator index " + std::to_string(i) +
                                  " outside 1.." + std::to_string(n_));
    }

    int n_ = 0;
    std::map<std::pair<int, int>, C> values_;
};

// Evaluate symbolic/eliminated parameters at a rational point. Only the
// off-diagonal parameters are carried over.
inline QParams<Rational> specialize_params(const QParams<LaurentPoly>& q,
                                           const std::map<VarId, Rational>& assignment) {
    QParams<Rational> out(q.n());
    for (const auto& [ij, val] : q.values()) {
        if (ij.first == ij.second) continue;
        out.set(ij.first, ij.second, poly_specialize(val, assignment));
    }
    return out;
}

} // namespace qshuffle
